#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hras/linear_model.hpp"

using namespace hras;

TEST_CASE("one-variable model emits the canonical golden file") {
  LinearModel m;
  const int x = m.add_var("x", 0.0, 1.0);
  LinExpr obj;
  obj.add(x, 1.0);
  m.set_objective(obj);
  const std::string expected =
      "Minimize\n"
      " obj: 1 x\n"
      "Subject To\n"
      "Bounds\n"
      " 0 <= x <= 1\n"
      "End\n";
  CHECK(emit_lp_file(m) == expected);
  CHECK(emit_lp_file(m) == emit_lp_file(m));  // byte-stable
}

TEST_CASE("binary variables land in the Binaries section") {
  LinearModel m;
  m.add_var("b", 0.0, 1.0, VarKind::Binary);
  const std::string text = emit_lp_file(m);
  CHECK(text.find("Binaries\n b\n") != std::string::npos);
}

TEST_CASE("duplicate terms merge and zero terms drop") {
  LinearModel m;
  const int x = m.add_var("x", 0.0, 10.0);
  const int y = m.add_var("y", 0.0, 10.0);
  LinExpr e;
  e.add(x, 2.0).add(y, 1.0).add(x, 3.0).add(y, -1.0);
  m.add_constr("c", e, ConSense::LE, 7.0);
  const std::string text = emit_lp_file(m);
  CHECK(text.find(" c: 5 x <= 7\n") != std::string::npos);
}

TEST_CASE("expression constants move to the right-hand side") {
  LinearModel m;
  const int x = m.add_var("x", 0.0, 10.0);
  LinExpr e;
  e.add(x, 1.0).addConstant(3.0);
  m.add_constr("c", e, ConSense::GE, 5.0);
  CHECK(emit_lp_file(m).find(" c: 1 x >= 2\n") != std::string::npos);
}

TEST_CASE("objective constants are emitted as a bare trailing term") {
  LinearModel m;
  const int x = m.add_var("x", 0.0, 1.0);
  LinExpr obj;
  obj.add(x, 2.0).addConstant(4.5);
  m.set_objective(obj);
  CHECK(emit_lp_file(m).find(" obj: 2 x + 4.5\n") != std::string::npos);
}

TEST_CASE("bounds cover fixed, free, one-sided and two-sided variables") {
  LinearModel m;
  m.add_var("fx", 3.0, 3.0);
  m.add_var("fr", -kInf, kInf);
  m.add_var("lo", 1.5, kInf);
  m.add_var("hi", -kInf, 2.5);
  const std::string text = emit_lp_file(m);
  CHECK(text.find(" fx = 3\n") != std::string::npos);
  CHECK(text.find(" fr free\n") != std::string::npos);
  CHECK(text.find(" lo >= 1.5\n") != std::string::npos);
  CHECK(text.find(" -infinity <= hi <= 2.5\n") != std::string::npos);
}

TEST_CASE("invalid or duplicate names are rejected") {
  LinearModel m;
  CHECK_THROWS_AS(m.add_var("2bad", 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(m.add_var("has space", 0.0, 1.0), std::invalid_argument);
  m.add_var("ok", 0.0, 1.0);
  CHECK_THROWS_AS(m.add_var("ok", 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(m.add_constr("bad name", LinExpr{}, ConSense::LE, 0.0),
                  std::invalid_argument);
}

TEST_CASE("constraints referencing unknown variables are rejected") {
  LinearModel m;
  m.add_var("x", 0.0, 1.0);
  LinExpr e;
  e.add(7, 1.0);
  CHECK_THROWS_AS(m.add_constr("c", e, ConSense::LE, 0.0), std::invalid_argument);
}

TEST_CASE("find_var and fix_var work by name and index") {
  LinearModel m;
  const int x = m.add_var("x", 0.0, 10.0);
  CHECK(m.find_var("x") == x);
  CHECK(m.find_var("nope") == -1);
  m.fix_var(x, 4.0);
  CHECK(m.vars()[static_cast<size_t>(x)].lb == 4.0);
  CHECK(m.vars()[static_cast<size_t>(x)].ub == 4.0);
}
