#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "nil/cli.hpp"
#include "nil/ideal.hpp"
#include "nil/parse.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args, bool color = false) {
  std::ostringstream out, err;
  const int code = nil::cli::run(args, out, err, {.color = color});
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Golden, TextOutput) {
  EXPECT_EQ(run({"mult", "--ideal", "x^2, y^3", "--c", "1"}).out, "generators: x, y\n");
  EXPECT_EQ(run({"lct", "--ideal", "x^2, y^3"}).out, "5/6\n");
  EXPECT_EQ(run({"lct", "--ideal", "1", "--vars", "x,y"}).out, "inf\n");
  EXPECT_EQ(run({"adj", "--ideal", "x^2, y^3", "--c", "1", "--axis", "x"}).out, "generators: x^2, x*y, y^3\n");
  EXPECT_EQ(run({"jump", "--ideal", "x^2, y^3", "--c-max", "7/6"}).out, "5/6, 7/6\n");
  EXPECT_EQ(run({"jump", "--ideal", "x^2, y^3", "--c-max", "1/2"}).out, "none\n");
  EXPECT_EQ(run({"openness", "--ideal", "x^2, y^3", "--c", "1"}).out, "1/12\n");
  EXPECT_EQ(run({"mult", "--g", "power(2; 1/2, 1/2)"}).out, "generators: x, y\n");
  EXPECT_EQ(run({"mult", "--g", "power(1; 1/3, 1/3)"}).out, "generators: 1\n");
  EXPECT_EQ(run({"mult", "--g", "power(5/2; 1)"}).out, "generators: x^2\n");
  EXPECT_EQ(run({"adj0", "--k", "6", "--alpha", "1,1", "--beta", "2,3", "--axis", "1"}).out,
            "member: true\nsum: 7\nthreshold: 7\ncase: equality\n");
  EXPECT_EQ(run({"valuation", "--g", "min(2*x, 3*y)", "--beta", "0,0"}).out,
            "member: false\nwitness: (1/2, 1/3)\n");
  EXPECT_EQ(run({"check-adjunction", "--ideal", "x^2, y^3", "--c", "1", "--axis", "1", "--format", "text"}).out,
            "adjoint: x^2, x*y, y^3\nmultiplier: x, y\nkernel: x^2, x*y\nrestricted multiplier: y^3\n"
            "restriction: y^3\nkernel exact: true\nrestriction exact: true\n");
}

TEST(Golden, ManyVariables) {
  EXPECT_EQ(run({"mult", "--ideal", "z1^2, z2^2, z3^2, z4^2", "--c", "2"}).out, "generators: z1, z2, z3, z4\n");
  EXPECT_EQ(run({"lct", "--ideal", "z1*z2, z3", "--vars", "z1..z3"}).out, "2\n");
  EXPECT_EQ(run({"mult", "--ideal", "b^3", "--vars", "a,b", "--c", "1"}).out, "generators: b^3\n");
}

TEST(Json, Envelope) {
  const auto j = run_json({"mult", "--ideal", "x^2, y^3", "--c", "1"});
  EXPECT_EQ(j["command"], "mult");
  EXPECT_EQ(j["version"], nil::cli::kVersion);
  EXPECT_EQ(j["inputs"]["variables"], nlohmann::json({"x", "y"}));
  EXPECT_EQ(j["result"]["generators"], nlohmann::json({"x", "y"}));
  EXPECT_EQ(j["certificates"]["margins"][0]["margin"], "2/5");
  EXPECT_EQ(j["certificates"]["margins"][1]["margin"], "1/5");

  const auto adjunction = run({"check-adjunction", "--ideal", "x^6, x^5*y, x^4*y^2, x^3*y^3, x^2*y^4, x*y^5, y^6",
                               "--c", "1", "--axis", "x"});
  ASSERT_EQ(adjunction.code, 0);
  const auto a = nlohmann::json::parse(adjunction.out);
  EXPECT_TRUE(a["result"]["kernel_exact"].get<bool>());
  EXPECT_TRUE(a["result"]["restriction_exact"].get<bool>());
  EXPECT_EQ(a["result"]["restricted_multiplier"], nlohmann::json({"y^6"}));

  const auto v = run_json({"valuation", "--g", "min(2*x, 3*y)", "--beta", "0,0"});
  EXPECT_TRUE(v["certificates"]["verified"].get<bool>());
  EXPECT_EQ(v["certificates"]["witness"], nlohmann::json({"1/2", "1/3"}));

  const auto o = run_json({"oracle", "--g", "min(2*x, 3*y)", "--A", "1,1"});
  EXPECT_EQ(o["result"]["verdict"], "diverges");
  EXPECT_EQ(o["result"]["partial_values"].size(), 4u);
  EXPECT_FALSE(o["result"]["exact_integrable"].get<bool>());
}

TEST(ExitCodes, Classes) {
  EXPECT_EQ(run({"mult", "--ideal", "x^2, y^3", "--c", "0"}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"lct", "--ideal", "x^2", "--c", "1"}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"bogus"}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"lct"}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"adj", "--ideal", "x*y", "--c", "1", "--axis", "1"}).code, nil::cli::kHypothesisError);
  EXPECT_EQ(run({"adj", "--ideal", "x^2, y^3", "--c", "1", "--axis", "w"}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"oracle", "--g", "min(2*x)", "--A", "81/40", "--strict"}).code, nil::cli::kInconclusive);
  EXPECT_EQ(run({"oracle", "--g", "min(2*x)", "--A", "81/40"}).code, nil::cli::kOk);
  EXPECT_EQ(run({"oracle", "--g", "min(2*x)", "--A", "1", "--schedule", "10, 20"}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"--version"}).out, std::string(nil::cli::kVersion) + "\n");
  EXPECT_EQ(run({"--help"}).code, nil::cli::kOk);
}

TEST(ParseErrors, ReportLineAndColumn) {
  const auto r = run({"mult", "--ideal", "x^2, y^", "--c", "1"});
  EXPECT_EQ(r.code, nil::cli::kInputError);
  EXPECT_NE(r.err.find("line 1, column 8"), std::string::npos) << r.err;
  try {
    nil::parse::parse_ideal("x^2,\n  y^3 + x", {"x", "y"});
    FAIL() << "expected a parse error";
  } catch (const nil::parse::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 7u);
    EXPECT_EQ(e.token(), "+");
  }
  EXPECT_THROW(nil::parse::parse_ideal("x^2, q", {"x", "y"}), nil::InputError);
  EXPECT_THROW(nil::parse::parse_toric("min(2*x, )", {}), nil::InputError);
  EXPECT_THROW(nil::parse::parse_toric("power(0; 1)", {}), nil::InputError);
}

TEST(InputFile, FieldsAndPrecedence) {
  const auto path = temp_file("nil_cli_input.json", R"({"command": "mult", "ideal": "x^2, y^3", "c": "1"})");
  EXPECT_EQ(run({"--input", path.string()}).out, "generators: x, y\n");
  // Command-line values override the file.
  EXPECT_EQ(run({"--input", path.string(), "--c", "1/2"}).out, "generators: 1\n");
  const auto bad = temp_file("nil_cli_bad.json", R"({"command": "mult", "ideal": "x", "colour": 1})");
  EXPECT_EQ(run({"--input", bad.string()}).code, nil::cli::kInputError);
  const auto broken = temp_file("nil_cli_broken.json", "{\"command\": ");
  EXPECT_EQ(run({"--input", broken.string()}).code, nil::cli::kInputError);
  EXPECT_EQ(run({"--input", "/nonexistent/file.json"}).code, nil::cli::kInputError);
}

TEST(Color, BoldLabelsOnlyWhenEnabled) {
  const auto plain = run({"adj0", "--k", "6", "--alpha", "1,1", "--beta", "0,5", "--axis", "1"});
  EXPECT_EQ(plain.out.find('\x1b'), std::string::npos);
  const auto colored = run({"adj0", "--k", "6", "--alpha", "1,1", "--beta", "0,5", "--axis", "1"}, true);
  EXPECT_NE(colored.out.find("\x1b[1m"), std::string::npos);
  EXPECT_NE(colored.out.find("member"), std::string::npos);
}

TEST(Binary, EnvironmentDisablesColor) {
  const std::string command = std::string("NIL_NO_COLOR=1 ") + NIL_BINARY + " lct --ideal 'x^2, y^3'";
  FILE* pipe = popen(command.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buffer[64] = {};
  const std::size_t got = fread(buffer, 1, sizeof buffer - 1, pipe);
  const int status = pclose(pipe);
  EXPECT_EQ(std::string(buffer, got), "5/6\n");
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((std::string(NIL_BINARY) + " adj --ideal x*y --c 1 --axis 1 2>/dev/null").c_str())), 3);
}

// Printing and re-parsing returns the same ideal and function.
TEST(RoundTrip, FormatThenParse) {
  const std::vector<std::string> vars{"x", "y", "z"};
  for (const char* text : {"x^2, y^3", "x*y*z, x^4", "1", "0", "x^3*z, y^2*z^2, x*y"}) {
    const auto ideal = nil::parse::parse_ideal(text, vars);
    EXPECT_EQ(nil::parse::parse_ideal(nil::parse::format_ideal(ideal, vars), vars), ideal) << text;
  }
  for (const char* text : {"min(2*x + 1, 3*y - 1/2, z)", "power(3/2; 1/3, 2/3, 0)", "min(x + y + z)"}) {
    const auto g = nil::parse::parse_toric(text, vars);
    const auto again = nil::parse::parse_toric(nil::parse::format_toric(g, vars), vars);
    EXPECT_EQ(nil::parse::format_toric(again, vars), nil::parse::format_toric(g, vars)) << text;
  }
}
