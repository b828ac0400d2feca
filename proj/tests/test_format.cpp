#include <doctest.h>

#include <fstream>
#include <sstream>

#include "frobex/cli.hpp"
#include "frobex/constructions.hpp"
#include "frobex/problem_format.hpp"

using namespace frobex;

#ifndef FROBEX_SOURCE_DIR
#define FROBEX_SOURCE_DIR "."
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("scalar text syntax") {
  Scalar s;
  REQUIRE(parse_scalar("-3/2", s));
  CHECK(to_string(s) == "-3/2");
  REQUIRE(parse_scalar("4/2", s));
  CHECK(to_string(s) == "2");
  REQUIRE(parse_scalar("+7", s));
  CHECK(s == 7);
  CHECK(!parse_scalar("1/0", s));
  CHECK(!parse_scalar("3/-2", s));
  CHECK(!parse_scalar("", s));
  CHECK(!parse_scalar("x", s));
  CHECK(!parse_scalar("1.5", s));
}

TEST_CASE("serialize / parse round-trips on builtins") {
  const std::pair<const char*, const char*> cases[] = {
      {"nilcoxeter:2", "q"},      {"nilcoxeter:3", "q"},     {"groupring:Z2:trivial", "q"},
      {"groupring:S3:A3", "q"},   {"groupring:Z4:Z2", "q"},  {"groupring:Z4:Z2", "ext:1"},
      {"groupring:Z2:Z2", "q"},
  };
  for (const auto& [spec, base] : cases) {
    CAPTURE(spec);
    CAPTURE(base);
    NestedProblem p = builtin_problem(spec, base);
    std::string text = serialize_problem(p);
    ParsedProblem parsed = parse_problem(text);
    for (const auto& e : parsed.errors) MESSAGE(e.render());
    REQUIRE(parsed.ok());
    REQUIRE(parsed.nested.has_value());
    CHECK(*parsed.nested == p);
    // byte stability through a round trip
    CHECK(serialize_problem(*parsed.nested) == text);
  }
}

TEST_CASE("shipped problem files parse to the builtins") {
  std::string dir = std::string(FROBEX_SOURCE_DIR) + "/data/";
  const std::pair<const char*, const char*> files[] = {
      {"nilcoxeter3.frob", "nilcoxeter:3"},
      {"groupring_s3_a3.frob", "groupring:S3:A3"},
      {"groupring_z4_z2_ext1.frob", "groupring:Z4:Z2"},
  };
  for (const auto& [file, spec] : files) {
    CAPTURE(file);
    std::string text = slurp(dir + file);
    ParsedProblem parsed = parse_problem(text);
    for (const auto& e : parsed.errors) MESSAGE(e.render());
    REQUIRE(parsed.ok());
    REQUIRE(parsed.nested.has_value());
    std::string base = (std::string(file).find("ext1") != std::string::npos) ? "ext:1" : "q";
    CHECK(*parsed.nested == builtin_problem(spec, base));
    // the shipped files are exactly the canonical serialization
    CHECK(serialize_problem(*parsed.nested) == text);
  }
}

TEST_CASE("parse errors are located and classified") {
  {
    ParsedProblem p = parse_problem("");
    REQUIRE(!p.ok());
    CHECK(p.errors[0].kind == LoadErrorKind::syntax);
    CHECK(p.errors[0].line == 1);
  }
  {
    // undefined reference: embed names an unknown algebra
    std::string text =
        "lambda_rank 1\n"
        "algebra Q\nbasis one\ndeg one = (0|even)\nunit = one\nmul one * one = one\n"
        "embed Q -> Mystery\nmap one = one\n";
    ParsedProblem p = parse_problem(text);
    REQUIRE(!p.ok());
    CHECK(p.errors[0].kind == LoadErrorKind::undefined_reference);
  }
  {
    // grading violation: weight-2 product declared equal to a weight-1 element
    std::string text =
        "lambda_rank 1\nsparse = true\n"
        "algebra N\nbasis one u1\ndeg one = (0|even)\ndeg u1 = (1|odd)\nunit = one\n"
        "mul one * one = one\nmul one * u1 = u1\nmul u1 * one = u1\nmul u1 * u1 = u1\n";
    ParsedProblem p = parse_problem(text);
    REQUIRE(!p.ok());
    CHECK(p.errors[0].kind == LoadErrorKind::structural);
    CHECK(p.errors[0].message.find("grading") != std::string::npos);
  }
  {
    // syntax error carries line and column
    std::string text = "lambda_rank 1\nalgebra Q\nbasis one\ndeg one = (0|frobly)\n";
    ParsedProblem p = parse_problem(text);
    REQUIRE(!p.ok());
    CHECK(p.errors[0].kind == LoadErrorKind::syntax);
    CHECK(p.errors[0].line == 4);
  }
  {
    // missing products without sparse mode
    std::string text =
        "lambda_rank 1\n"
        "algebra N\nbasis one u1\ndeg one = (0|even)\ndeg u1 = (1|odd)\nunit = one\n"
        "mul one * one = one\n";
    ParsedProblem p = parse_problem(text);
    REQUIRE(!p.ok());
    CHECK(p.errors[0].kind == LoadErrorKind::structural);
    CHECK(p.errors[0].message.find("unspecified") != std::string::npos);
  }
}

TEST_CASE("a file without a tower is an algebra bundle") {
  std::string text =
      "lambda_rank 1\n"
      "algebra Q\nbasis one\ndeg one = (0|even)\nunit = one\nmul one * one = one\n";
  ParsedProblem p = parse_problem(text);
  REQUIRE(p.ok());
  CHECK(!p.nested.has_value());
  REQUIRE(p.algebras.size() == 1);
  CHECK(p.algebras[0].first == "Q");
  CHECK(p.algebras[0].second->dim() == 1);
}

TEST_CASE("cli exit codes partition the outcomes") {
  std::ostringstream out, err;
  CHECK(cli::run({"verify", "--builtin", "nilcoxeter:3"}, out, err) == cli::exit_valid);
  CHECK(out.str().find("CERTIFICATE VALID degree=(-2|even) twists=(psi_A,psi_B)") !=
        std::string::npos);

  // corrupted trace: parses fine, fails verification -> exit 1
  NestedProblem p = builtin_problem("nilcoxeter:2");
  p.tr_A.matrix = Matrix(1, 2);
  std::string corrupted = serialize_problem(p);
  std::string path = "corrupted_test.frob";
  {
    std::ofstream f(path);
    f << corrupted;
  }
  std::ostringstream out2, err2;
  CHECK(cli::run({"verify", path}, out2, err2) == cli::exit_invalid);
  CHECK(out2.str().find("CHECK trace_A.T1 FAIL") != std::string::npos);
  CHECK(out2.str().find("CERTIFICATE INVALID") != std::string::npos);

  // construction rejection -> exit 2
  std::ostringstream out3, err3;
  CHECK(cli::run({"verify", "--builtin", "groupring:S3:{e,t12,t13}"}, out3, err3) ==
        cli::exit_input_error);
  CHECK(err3.str().find("not closed") != std::string::npos);

  // bad file -> exit 2
  std::ostringstream out4, err4;
  CHECK(cli::run({"verify", "no_such_file.frob"}, out4, err4) == cli::exit_input_error);
}

TEST_CASE("cli dump round-trips through parse") {
  std::ostringstream out, err;
  REQUIRE(cli::run({"dump", "--builtin", "groupring:Z4:Z2"}, out, err) == 0);
  ParsedProblem parsed = parse_problem(out.str());
  REQUIRE(parsed.ok());
  REQUIRE(parsed.nested.has_value());
  CHECK(*parsed.nested == builtin_problem("groupring:Z4:Z2"));
}

TEST_CASE("cli json report carries the Nakayama maps and nested trace") {
  std::ostringstream out, err;
  REQUIRE(cli::run({"report", "--builtin", "nilcoxeter:3", "--json"}, out, err) == 0);
  const std::string j = out.str();
  CHECK(j.find("\"u1\": \"u2\"") != std::string::npos);   // psi_A swaps the generators
  CHECK(j.find("\"u2\": \"u1\"") != std::string::npos);
  CHECK(j.find("\"u121\": \"u1\"") != std::string::npos); // nested trace top value
  CHECK(j.find("\"valid\": true") != std::string::npos);
}

TEST_CASE("report for the degenerate trivial-subgroup tower shows tr_A") {
  std::ostringstream out, err;
  REQUIRE(cli::run({"report", "--builtin", "groupring:Z2:trivial", "--json"}, out, err) == 0);
  // nested trace = tr_A: picks the coefficient of e (B's unit label is "e")
  CHECK(out.str().find("\"e\": \"e\"") != std::string::npos);
  CHECK(out.str().find("\"g\": \"0\"") != std::string::npos);
}
