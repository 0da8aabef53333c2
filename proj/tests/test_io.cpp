#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "lgh/io.hpp"
#include "support.hpp"

using namespace lgh;

namespace {

ProductGroup group_of(GroupKind k1, int t1, GroupKind k2, int t2) { return {{k1, t1}, {k2, t2}}; }

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lgh_io_" + name);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_double round trips bit-exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, i % 40 - 20);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "-0");
}

TEST_CASE("coefficient files round trip") {
  std::mt19937_64 rng(5);
  for (const ProductGroup& g : {group_of(GroupKind::Circle, 3, GroupKind::Circle, 2),
                                group_of(GroupKind::Circle, 2, GroupKind::SU2, 3),
                                group_of(GroupKind::Trivial, 0, GroupKind::SU2, 4)}) {
    const FourierTable t = test::random_table(g, rng);
    const std::string text = coef_to_string(t);
    const FourierTable back = parse_coef(text);
    CHECK(back.group() == g);
    CHECK(test::max_abs_diff(back, t) == 0.0);
    CHECK(coef_to_string(back) == text);
  }
}

TEST_CASE("coefficient file layout") {
  FourierTable t(group_of(GroupKind::Circle, 1, GroupKind::SU2, 1));
  t.set({-1, 1}, 0, 0, 1, 0, cplx(0.25, -1.0));
  CHECK(coef_to_string(t) == "LGH-COEF v1\nFACTOR1 T1 1\nFACTOR2 SU2 1\n-1 0 0 1 1 -1 0.25 -1\n");
  CHECK(coef_to_string(t, 2.0) == "LGH-COEF v1\nFACTOR1 T1 1\nFACTOR2 SU2 1\n");
}

TEST_CASE("coefficient parse errors") {
  const std::string head = "LGH-COEF v1\nFACTOR1 T1 2\nFACTOR2 SU2 2\n";
  CHECK_THROWS_AS(parse_coef("LGH-COEF v2\nFACTOR1 T1 2\nFACTOR2 T1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_coef("LGH-COEF v1\nFACTOR1 T3 2\nFACTOR2 T1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_coef("LGH-COEF v1\nFACTOR1 TRIV 2\nFACTOR2 T1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_coef(head + "3 0 0 0 0 0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_coef(head + "1 0 0 1 0 1 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_coef(head + "1 0 0 2 3 0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_coef(head + "1 0 0 2 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_coef(head + "1 0 0 2 0 0 1 x\n"), ParseError);
  CHECK(parse_coef(head + "1 0 0 2 -2 2 1 0\n").entry({1, 2}, 0, 0, 0, 2) == cplx(1.0));
}

TEST_CASE("grid files round trip") {
  std::mt19937_64 rng(7);
  const ProductGrid grid{FactorGrid::circle(5), FactorGrid::for_band(GroupKind::SU2, 2)};
  GridFunction f = GridFunction::zeros(grid);
  for (cplx& v : f.values) v = test::random_cplx(rng);
  const std::string text = grid_to_string(f);
  CHECK(has_grid_header(text));
  CHECK_FALSE(has_grid_header("LGH-COEF v1\n"));
  const GridFunction back = parse_grid(text);
  CHECK(back.grid == grid);
  CHECK(back.values == f.values);

  CHECK_THROWS_AS(parse_grid("LGH-GRID v1\nGRID1 T1 2\nGRID2 TRIV 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("LGH-GRID v1\nGRID1 T1 1\nGRID2 SU2 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("LGH-GRID v1\nGRID1 TRIV 2\nGRID2 T1 1\n1 0\n"), ParseError);
  CHECK(parse_grid("LGH-GRID v1\nGRID1 TRIV 1\nGRID2 T1 1\n1 2\n").values[0] == cplx(1, 2));
}

TEST_CASE("spec parsing") {
  const OperatorSpec s = parse_spec("factor1 = T1\nfactor2 = SU2  # comment\na = quadratic:0+1*sqrt(2)\n", ".");
  CHECK(s.group == group_of(GroupKind::Circle, kDefaultCircleTrunc, GroupKind::SU2, kDefaultTwoEll));
  CHECK(s.a.kind == ScalarKind::Quadratic);
  CHECK(s.constant_coefficients());

  const OperatorSpec o = parse_spec("factor1 = TRIV\nfactor2 = SU2\ntrunc2 = 6\nq = complex:0+3/2*i\n", ".", {5, std::nullopt});
  CHECK(o.group == group_of(GroupKind::Trivial, 0, GroupKind::SU2, 6));
  CHECK(o.q.to_string() == parse_scalar("complex:0+3/2*i").to_string());

  const OperatorSpec v = parse_spec(
      "factor1 = T1\nfactor2 = T1\ntrunc1 = 4\ntrunc2 = 4\n"
      "a = trigpoly:[complex:0+1/2*i, quadratic:0+1*sqrt(2), complex:0-1/2*i]\n",
      ".");
  REQUIRE(v.a_var);
  CHECK(v.a_var->degree() == 1);
  const OperatorSpec c = parse_spec("factor1 = T1\nfactor2 = T1\na = trigpoly:[rational:2/3]\n", ".");
  CHECK_FALSE(c.a_var);
  CHECK(c.a.to_string() == "rational:2/3");

  CHECK_THROWS_AS(parse_spec("factor1 = T1\n", "."), ParseError);
  CHECK_THROWS_AS(parse_spec("factor1 = T1\nfactor2 = T1\nb = 1\n", "."), ParseError);
  CHECK_THROWS_AS(parse_spec("factor1 = T1\nfactor2 = T1\na = rational:1\na = rational:2\n", "."), ParseError);
  CHECK_THROWS_AS(parse_spec("factor1 = T1\nfactor2 = T1\na rational:1\n", "."), ParseError);
  CHECK_THROWS_AS(parse_spec("factor1 = T1\nfactor2 = T1\na = rational:x\n", "."), ParseError);
  CHECK_THROWS_AS(parse_spec("factor1 = T1\nfactor2 = T1\nq = gridfile:missing.grid\n", "."), ParseError);
  CHECK_THROWS_AS(parse_spec("factor1 = SU2\nfactor2 = T1\na = trigpoly:[rational:1, rational:0, rational:1]\n", "."),
                  ParseError);
}

TEST_CASE("spec files resolve grid paths") {
  const auto dir = scratch_dir("spec");
  const ProductGrid grid{FactorGrid::circle(7), FactorGrid::circle(7)};
  const GridFunction q = GridFunction::sample(grid, [](const FactorPoint& p1, const FactorPoint& p2) {
    return cplx(std::sin(p1.t + p2.t));
  });
  const GridFunction Q = GridFunction::sample(grid, [](const FactorPoint& p1, const FactorPoint& p2) {
    return cplx(-0.5 * std::cos(p1.t + p2.t));
  });
  write_text_file(dir / "q.grid", grid_to_string(q));
  write_text_file(dir / "Q.grid", grid_to_string(Q));
  write_text_file(dir / "spec.txt",
                  "factor1 = T1\nfactor2 = T1\ntrunc1 = 3\ntrunc2 = 3\na = rational:1\n"
                  "q = gridfile:q.grid\nq0 = rational:0\nQ = gridfile:Q.grid\n");
  const OperatorSpec s = read_spec_file(dir / "spec.txt");
  REQUIRE(s.q_func);
  REQUIRE(s.Q);
  REQUIRE(s.q_func->table());
  CHECK(std::abs(s.q_func->table()->entry({1, 1}, 0, 0, 0, 0) - cplx(0, -0.5)) < 1e-14);
  CHECK(std::abs(s.Q->table()->entry({-1, -1}, 0, 0, 0, 0) + 0.25) < 1e-14);
  std::filesystem::remove_all(dir);
}
