#include "nil/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "nil/errors.hpp"
#include "nil/ideal.hpp"
#include "nil/oracle.hpp"
#include "nil/parse.hpp"

namespace nil::cli {

namespace {

using json = nlohmann::ordered_json;

// Problem fields in a fixed order; command-line options and --input files
// both fill this table.
const std::vector<std::string> kFields = {"vars", "ideal",  "g",      "c",        "c_max",  "axis",
                                          "beta", "k",      "alpha",  "A",        "epsilon", "kind",
                                          "weight", "schedule", "points", "samples"};

const std::map<std::string, std::set<std::string>> kCommandFields = {
    {"mult", {"vars", "ideal", "g", "c"}},
    {"adj", {"vars", "ideal", "c", "axis"}},
    {"adj0", {"vars", "k", "alpha", "axis", "beta"}},
    {"lct", {"vars", "ideal"}},
    {"jump", {"vars", "ideal", "c_max"}},
    {"openness", {"vars", "ideal", "c"}},
    {"valuation", {"vars", "g", "beta"}},
    {"check-adjunction", {"vars", "ideal", "c", "axis"}},
    {"oracle", {"vars", "ideal", "g", "c", "axis", "beta", "A", "epsilon", "kind", "weight", "schedule",
                "points", "samples"}},
};

std::string option_name(const std::string& field) {
  std::string name = field;
  std::replace(name.begin(), name.end(), '_', '-');
  return "--" + name;
}

struct Problem {
  std::string command;
  std::map<std::string, std::string> fields;
  std::string format;
  std::uint64_t seed = oracle::OracleConfig{}.seed;
  unsigned threads = 0;
  bool strict = false;

  bool has(const std::string& f) const { return fields.count(f) > 0; }
  const std::string& require(const std::string& f) const {
    const auto it = fields.find(f);
    if (it == fields.end()) throw InputError(command + " needs " + option_name(f));
    return it->second;
  }
};

struct Output {
  json result = json::object();
  json certificates = json::object();
  std::vector<std::pair<std::string, std::string>> lines;
  bool inconclusive = false;
};

std::string json_scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) out += (out.empty() ? "" : ", ") + json_scalar_text(e);
    return out;
  }
  return v.dump();
}

void merge_input_file(const std::string& path, Problem& problem, bool format_given, bool seed_given,
                      bool threads_given) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(path + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      const auto cmd = value.get<std::string>();
      if (!problem.command.empty() && problem.command != cmd)
        throw InputError("command '" + problem.command + "' conflicts with '" + cmd + "' in " + path);
      problem.command = cmd;
    } else if (key == "variables") {
      problem.fields.try_emplace("vars", json_scalar_text(value));
    } else if (key == "toric_function") {
      problem.fields.try_emplace("g", json_scalar_text(value));
    } else if (key == "format") {
      if (!format_given) problem.format = value.get<std::string>();
    } else if (key == "seed") {
      if (!seed_given) problem.seed = value.get<std::uint64_t>();
    } else if (key == "threads") {
      if (!threads_given) problem.threads = value.get<unsigned>();
    } else if (key == "strict") {
      problem.strict = problem.strict || value.get<bool>();
    } else if (std::find(kFields.begin(), kFields.end(), key) != kFields.end()) {
      problem.fields.try_emplace(key, json_scalar_text(value));
    } else {
      throw InputError(path + ": unknown field '" + key + "'");
    }
  }
}

std::vector<std::string> resolve_variables(const Problem& p) {
  if (p.has("vars")) return parse::parse_variable_list(p.fields.at("vars"));
  std::vector<std::string> vars;
  if (p.has("ideal")) vars = parse::mentioned_variables(p.fields.at("ideal"));
  if (vars.empty() && p.has("g")) {
    const auto& g = p.fields.at("g");
    vars = parse::is_power_expression(g) ? parse::default_variables(parse::power_dimension(g))
                                         : parse::mentioned_variables(g);
  }
  if (vars.empty() && p.has("alpha")) vars = parse::default_variables(parse::parse_rational_list(p.fields.at("alpha")).size());
  if (vars.empty()) throw InputError("cannot infer the variables; pass --vars");
  return vars;
}

Rational rational_field(const Problem& p, const std::string& f) {
  const auto list = parse::parse_rational_list(p.require(f));
  if (list.size() != 1) throw InputError(option_name(f) + " expects a single rational");
  return list.front();
}

std::size_t axis_field(const Problem& p, const std::vector<std::string>& vars) {
  const auto& text = p.require("axis");
  const auto it = std::find(vars.begin(), vars.end(), text);
  if (it != vars.end()) return static_cast<std::size_t>(it - vars.begin());
  if (!text.empty() && std::all_of(text.begin(), text.end(), ::isdigit) && text.size() < 6) {
    const auto index = std::stoul(text);
    if (index >= 1 && index <= vars.size()) return index - 1;
  }
  throw InputError("--axis '" + text + "' is not one of the variables");
}

std::vector<std::string> without(const std::vector<std::string>& vars, std::size_t axis) {
  auto out = vars;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(axis));
  return out;
}

json rationals_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

json double_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string bool_text(bool b) { return b ? "true" : "false"; }

ExponentVector plus_ones(const Monomial& beta, std::optional<std::size_t> skip = std::nullopt) {
  auto x = to_exponents(beta);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!skip || i != *skip) x[i] += 1;
  return x;
}

ConcaveToricFunction toric_field(const Problem& p, const std::vector<std::string>& vars) {
  auto g = parse::parse_toric(p.require("g"), vars);
  if (g.dimension() != vars.size())
    throw InputError("the toric function has dimension " + std::to_string(g.dimension()) + " but there are " +
                     std::to_string(vars.size()) + " variables");
  return g;
}

Output cmd_mult(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  json margins = json::array();
  MonomialIdeal result = MonomialIdeal::zero(vars.size());
  if (p.has("g") == p.has("ideal")) throw InputError("mult needs exactly one of --ideal and --g");
  if (p.has("g")) {
    if (p.has("c")) throw InputError("--c is not used with --g; scale the function instead");
    const auto g = toric_field(p, vars);
    result = multiplier_ideal_toric(g);
    for (const auto& beta : result.generators())
      margins.push_back({{"monomial", parse::format_monomial(beta, vars)},
                         {"margin", to_string(classify_in_body(g, plus_ones(beta)).margin)}});
  } else {
    const auto a = parse::parse_ideal(p.fields.at("ideal"), vars);
    const auto c = rational_field(p, "c");
    result = multiplier_ideal(a, c);
    const auto poly = a.newton_polyhedron();
    for (const auto& beta : result.generators())
      margins.push_back({{"monomial", parse::format_monomial(beta, vars)},
                         {"margin", to_string(poly.classify(plus_ones(beta), c).margin)}});
  }
  o.result["generators"] = parse::format_generators(result, vars);
  o.certificates["margins"] = margins;
  o.lines.emplace_back("generators", parse::format_ideal(result, vars));
  return o;
}

Output cmd_adj(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto a = parse::parse_ideal(p.require("ideal"), vars);
  const auto c = rational_field(p, "c");
  const auto axis = axis_field(p, vars);
  const auto adj = adjoint_ideal(a, c, axis);
  const auto poly = a.newton_polyhedron();
  json branches = json::array();
  for (const auto& beta : adj.generators()) {
    const bool interior = poly.classify(plus_ones(beta, axis), c).verdict == Verdict::Interior;
    branches.push_back({{"monomial", parse::format_monomial(beta, vars)},
                        {"branch", interior ? "interior" : "axis_face"}});
  }
  o.result["generators"] = parse::format_generators(adj, vars);
  o.certificates["branches"] = branches;
  o.lines.emplace_back("generators", parse::format_ideal(adj, vars));
  return o;
}

Output cmd_adj0(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto k = rational_field(p, "k");
  const auto alpha = parse::parse_rational_list(p.require("alpha"));
  if (alpha.size() != vars.size()) throw InputError("--alpha must have one entry per variable");
  const auto axis = axis_field(p, vars);
  const auto beta = parse::parse_exponents(p.require("beta"), vars);
  const bool member = adj0_power_membership(k, alpha, axis, beta);
  const Rational sum = adj0_power_sum(alpha, beta);
  const Rational threshold = k + 1 / alpha[axis];
  const std::string which = sum > threshold ? "strict" : sum == threshold ? "equality" : "below";
  o.result = {{"member", member}, {"sum", to_string(sum)}, {"threshold", to_string(threshold)}, {"case", which}};
  o.lines = {{"member", bool_text(member)},
             {"sum", to_string(sum)},
             {"threshold", to_string(threshold)},
             {"case", which}};
  return o;
}

Output cmd_lct(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto value = lct(parse::parse_ideal(p.require("ideal"), vars));
  o.result["lct"] = to_string(value);
  o.lines.emplace_back("", to_string(value));
  return o;
}

Output cmd_jump(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto jumps = jumping_numbers(parse::parse_ideal(p.require("ideal"), vars), rational_field(p, "c_max"));
  std::string text;
  for (const auto& q : jumps) text += (text.empty() ? "" : ", ") + to_string(q);
  o.result["jumping_numbers"] = rationals_json(jumps);
  o.lines.emplace_back("", text.empty() ? "none" : text);
  return o;
}

Output cmd_openness(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto a = parse::parse_ideal(p.require("ideal"), vars);
  const auto c = rational_field(p, "c");
  const auto eps = openness_margin(a, c);
  const auto base = multiplier_ideal(a, c);
  const bool verified = multiplier_ideal(a, (1 + eps) * c) == base;
  o.result["epsilon"] = to_string(eps);
  o.certificates = {{"multiplier", parse::format_generators(base, vars)},
                    {"scaled_c", to_string(Rational((1 + eps) * c))},
                    {"verified", verified}};
  o.lines.emplace_back("", to_string(eps));
  return o;
}

Output cmd_valuation(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto g = toric_field(p, vars);
  const auto beta = parse::parse_exponents(p.require("beta"), vars);
  const auto report = valuative_membership(g, to_exponents(beta));
  o.result["member"] = report.member;
  o.lines.emplace_back("member", bool_text(report.member));
  if (report.member) {
    o.result["margin"] = to_string(report.margin);
    o.lines.emplace_back("margin", to_string(report.margin));
  } else {
    const auto& w = report.certificate;
    const auto value = homogenized_value(g, w);
    const Rational pairing = dot(w, to_exponents(beta)) + dot(w, ones(w.size()));
    o.certificates = {{"witness", rationals_json(w)},
                      {"kiselman_number", value.exact ? json(to_string(*value.exact)) : json(value.approx)},
                      {"pairing", to_string(pairing)},
                      {"verified", certifies_non_membership(g, to_exponents(beta), w)}};
    o.lines.emplace_back("witness", to_string(w));
  }
  return o;
}

Output cmd_check_adjunction(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const auto a = parse::parse_ideal(p.require("ideal"), vars);
  const auto c = rational_field(p, "c");
  const auto axis = axis_field(p, vars);
  const auto r = adjunction_report(a, c, axis);
  const auto hvars = without(vars, axis);
  o.result = {{"adj", parse::format_generators(r.adjoint, vars)},
              {"multiplier", parse::format_generators(r.multiplier, vars)},
              {"kernel", parse::format_generators(r.kernel, vars)},
              {"restricted_multiplier", parse::format_generators(r.restricted_multiplier, hvars)},
              {"restriction", parse::format_generators(r.restriction, hvars)},
              {"kernel_exact", r.kernel_exact},
              {"restriction_exact", r.restriction_exact}};
  o.lines = {{"adjoint", parse::format_ideal(r.adjoint, vars)},
             {"multiplier", parse::format_ideal(r.multiplier, vars)},
             {"kernel", parse::format_ideal(r.kernel, vars)},
             {"restricted multiplier", parse::format_ideal(r.restricted_multiplier, hvars)},
             {"restriction", parse::format_ideal(r.restriction, hvars)},
             {"kernel exact", bool_text(r.kernel_exact)},
             {"restriction exact", bool_text(r.restriction_exact)}};
  return o;
}

oracle::OracleConfig oracle_config(const Problem& p) {
  oracle::OracleConfig cfg;
  if (p.has("schedule")) {
    cfg.schedule.clear();
    for (const auto& q : parse::parse_rational_list(p.fields.at("schedule"))) cfg.schedule.push_back(q.get_d());
  }
  auto natural = [&](const std::string& f) {
    const auto q = rational_field(p, f);
    if (q <= 0 || q.get_den() != 1 || !q.get_num().fits_ulong_p())
      throw InputError(option_name(f) + " expects a positive integer");
    return q.get_num().get_ui();
  };
  if (p.has("points")) cfg.points_per_axis = natural("points");
  if (p.has("samples")) cfg.mc_samples = natural("samples");
  cfg.seed = p.seed;
  cfg.threads = p.threads;
  cfg.validate();
  return cfg;
}

Output cmd_oracle(const Problem& p, const std::vector<std::string>& vars) {
  Output o;
  const std::string kind = p.has("kind") ? p.fields.at("kind") : "orthant";
  if (p.has("g") == p.has("ideal")) throw InputError("oracle needs exactly one of --g and --ideal");
  const auto g = p.has("g") ? toric_field(p, vars)
                            : toric_function_of(parse::parse_ideal(p.fields.at("ideal"), vars), rational_field(p, "c"));
  const auto cfg = oracle_config(p);
  auto shift = [&](std::optional<std::size_t> skip) {
    if (p.has("A") == p.has("beta")) throw InputError("oracle needs exactly one of --A and --beta");
    if (p.has("A")) return parse::parse_rational_list(p.fields.at("A"));
    return plus_ones(parse::parse_exponents(p.fields.at("beta"), vars), skip);
  };

  oracle::ConvergenceVerdict v;
  std::optional<bool> exact;
  if (kind == "orthant") {
    const auto a = shift(std::nullopt);
    if (a.size() != vars.size()) throw InputError("--A must have one entry per variable");
    v = oracle::orthant_exp_integral(g, a, cfg);
    exact = exp_integrable_shifted(g, a);
  } else if (kind == "adjoint") {
    const auto axis = axis_field(p, vars);
    const auto a = shift(axis);
    if (a.size() != vars.size()) throw InputError("--A must have one entry per variable");
    const Rational eps = p.has("epsilon") ? rational_field(p, "epsilon") : Rational(0);
    v = oracle::adjoint_weighted_integral(g, a, eps, axis, cfg);
  } else if (kind == "polydisk") {
    const auto beta = parse::parse_exponents(p.require("beta"), vars);
    const std::string weight = p.has("weight") ? p.fields.at("weight") : "plain";
    if (weight != "plain" && weight != "poincare") throw InputError("--weight must be plain or poincare");
    const bool poincare = weight == "poincare";
    const std::size_t axis = poincare ? axis_field(p, vars) : 0;
    v = oracle::polydisk_mc(g, beta, poincare ? oracle::Weight::Poincare : oracle::Weight::Plain, axis, cfg);
    if (!poincare) exact = in_multiplier_ideal_toric(g, beta);
  } else {
    throw InputError("--kind must be orthant, adjoint or polydisk");
  }

  json partial = json::array();
  o.lines.emplace_back("verdict", oracle::to_string(v.verdict));
  for (const auto& pv : v.partial_values) {
    partial.push_back({{"T", pv.box}, {"estimate", double_json(pv.estimate)}, {"log_estimate", double_json(pv.log_estimate)}});
    o.lines.emplace_back("T = " + format_double(pv.box), format_double(pv.estimate));
  }
  json ratios = json::array();
  std::string ratio_text;
  for (double r : v.increment_ratios) {
    ratios.push_back(double_json(r));
    ratio_text += (ratio_text.empty() ? "" : ", ") + format_double(r);
  }
  o.lines.emplace_back("increment ratios", ratio_text);
  o.result = {{"verdict", oracle::to_string(v.verdict)}, {"partial_values", partial}};
  o.certificates = {{"increment_ratios", ratios},
                    {"convergence_ratio_threshold", cfg.convergence_ratio_threshold},
                    {"divergence_growth_threshold", cfg.divergence_growth_threshold}};
  if (exact) {
    o.result["exact_integrable"] = *exact;
    o.lines.emplace_back("exact", *exact ? "integrable" : "not integrable");
  }
  o.inconclusive = v.verdict == oracle::Convergence::Inconclusive;
  return o;
}

Output dispatch(const Problem& p, const std::vector<std::string>& vars) {
  if (p.command == "mult") return cmd_mult(p, vars);
  if (p.command == "adj") return cmd_adj(p, vars);
  if (p.command == "adj0") return cmd_adj0(p, vars);
  if (p.command == "lct") return cmd_lct(p, vars);
  if (p.command == "jump") return cmd_jump(p, vars);
  if (p.command == "openness") return cmd_openness(p, vars);
  if (p.command == "valuation") return cmd_valuation(p, vars);
  if (p.command == "check-adjunction") return cmd_check_adjunction(p, vars);
  return cmd_oracle(p, vars);
}

void print_text(const Output& o, std::ostream& out, bool color) {
  for (const auto& [label, value] : o.lines) {
    if (label.empty()) {
      out << value << "\n";
    } else if (color) {
      out << "\x1b[1m" << label << ":\x1b[0m " << value << "\n";
    } else {
      out << label << ": " << value << "\n";
    }
  }
}

const char* kFooter =
    "Commands:\n"
    "  mult              multiplier ideal of --ideal at --c, or of a toric --g\n"
    "  adj               adjoint ideal of --ideal at --c along --axis\n"
    "  adj0              zero adjoint membership for power(--k; --alpha), --axis, --beta\n"
    "  lct               log canonical threshold of --ideal\n"
    "  jump              jumping numbers of --ideal up to --c-max\n"
    "  openness          openness margin of --ideal at --c\n"
    "  valuation         valuative membership of z^--beta for --g\n"
    "  check-adjunction  exactness of the adjunction sequence (JSON by default)\n"
    "  oracle            numerical convergence check (--kind orthant|adjoint|polydisk)\n"
    "\n"
    "Exit codes: 0 ok, 2 input error, 3 hypothesis violated, 4 inconclusive with --strict.\n";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const RunOptions& options) {
  CLI::App app{"Exact multiplier and adjoint ideals of monomial ideals and toric weights", "nil"};
  app.footer(kFooter);
  Problem problem;
  std::string input_path;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> opts;

  app.add_option("command", problem.command, "Command to run")
      ->check(CLI::IsMember({"mult", "adj", "adj0", "lct", "jump", "openness", "valuation", "check-adjunction",
                             "oracle"}));
  const std::map<std::string, std::string> help = {
      {"vars", "Variable order, e.g. \"x,y\" or \"z1..z4\""},
      {"ideal", "Monomial ideal, e.g. \"x^2, y^3\""},
      {"g", "Toric function: min(...) or power(k; a1,...,an)"},
      {"c", "Exponent c (rational)"},
      {"c_max", "Upper end for jumping numbers"},
      {"axis", "Hyperplane variable (name or 1-based index)"},
      {"beta", "Exponent vector or monomial"},
      {"k", "Coefficient of the power family"},
      {"alpha", "Exponents of the power family"},
      {"A", "Shift vector for the orthant integrals"},
      {"epsilon", "Openness perturbation for the adjoint integral"},
      {"kind", "Oracle kind: orthant, adjoint or polydisk"},
      {"weight", "Polydisk weight: plain or poincare"},
      {"schedule", "Truncation boxes, e.g. \"10, 20, 40, 80\""},
      {"points", "Quadrature points per axis"},
      {"samples", "Monte Carlo samples"},
  };
  for (const auto& f : kFields) opts[f] = app.add_option(option_name(f), raw[f], help.at(f));
  auto* format_opt = app.add_option("--format", problem.format, "Output format")
                         ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--input", input_path, "JSON problem file");
  auto* seed_opt = app.add_option("--seed", problem.seed, "Oracle seed");
  auto* threads_opt = app.add_option("--threads", problem.threads, "Oracle worker threads (0 = all cores)");
  app.add_flag("--strict", problem.strict, "Exit with code 4 when the oracle is inconclusive");
  app.set_version_flag("--version", kVersion);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    for (const auto& f : kFields)
      if (opts[f]->count() > 0) problem.fields[f] = raw[f];
    if (!input_path.empty())
      merge_input_file(input_path, problem, format_opt->count() > 0, seed_opt->count() > 0,
                       threads_opt->count() > 0);
    if (problem.command.empty()) throw InputError("no command given; see --help");
    const auto allowed = kCommandFields.find(problem.command);
    if (allowed == kCommandFields.end()) throw InputError("unknown command '" + problem.command + "'");
    for (const auto& [field, value] : problem.fields)
      if (!allowed->second.count(field))
        throw InputError(option_name(field) + " is not used by " + problem.command);
    if (problem.format.empty()) problem.format = problem.command == "check-adjunction" ? "json" : "text";
    if (problem.format != "text" && problem.format != "json") throw InputError("--format must be text or json");

    const auto vars = resolve_variables(problem);
    const Output o = dispatch(problem, vars);

    if (problem.format == "json") {
      json inputs = json::object();
      inputs["variables"] = vars;
      for (const auto& f : kFields)
        if (f != "vars" && problem.has(f)) inputs[f] = problem.fields.at(f);
      json doc = {{"command", problem.command},
                  {"inputs", inputs},
                  {"result", o.result},
                  {"certificates", o.certificates},
                  {"version", kVersion}};
      out << doc.dump(2) << "\n";
    } else {
      print_text(o, out, options.color);
    }
    return o.inconclusive && problem.strict ? kInconclusive : kOk;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return kHypothesisError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace nil::cli
