#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "myopic/lp.hpp"
#include "myopic/simplex.hpp"

using namespace myopic;

TEST_CASE("simplex solves tiny inequality programs") {
  // max x + y subject to x + y <= 1
  const SimplexResult r = solve_dense_simplex(
      2, true, {{0, 1.0}, {1, 1.0}}, {SimplexRow{{{0, 1.0}, {1, 1.0}}, RowSense::le, 1.0}});
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK_THAT(r.objective, Catch::Matchers::WithinAbs(1.0, 1e-9));

  // max 2x + 3y subject to x + y <= 4, x + 3y <= 6
  const SimplexResult r2 =
      solve_dense_simplex(2, true, {{0, 2.0}, {1, 3.0}},
                          {SimplexRow{{{0, 1.0}, {1, 1.0}}, RowSense::le, 4.0},
                           SimplexRow{{{0, 1.0}, {1, 3.0}}, RowSense::le, 6.0}});
  REQUIRE(r2.status == SolveStatus::optimal);
  CHECK_THAT(r2.objective, Catch::Matchers::WithinAbs(9.0, 1e-9));
  CHECK_THAT(r2.x[0], Catch::Matchers::WithinAbs(3.0, 1e-9));
  CHECK_THAT(r2.x[1], Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("simplex handles equalities through phase 1") {
  // max x subject to x + y = 2, x - y = 0  ->  x = y = 1
  const SimplexResult r =
      solve_dense_simplex(2, true, {{0, 1.0}},
                          {SimplexRow{{{0, 1.0}, {1, 1.0}}, RowSense::eq, 2.0},
                           SimplexRow{{{0, 1.0}, {1, -1.0}}, RowSense::eq, 0.0}});
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK_THAT(r.x[0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(r.x[1], Catch::Matchers::WithinAbs(1.0, 1e-9));

  // duplicated equality rows are redundant, not fatal
  const SimplexResult dup =
      solve_dense_simplex(2, true, {{0, 1.0}},
                          {SimplexRow{{{0, 1.0}, {1, -1.0}}, RowSense::eq, 0.0},
                           SimplexRow{{{0, 1.0}, {1, -1.0}}, RowSense::eq, 0.0},
                           SimplexRow{{{0, 1.0}, {1, 1.0}}, RowSense::le, 3.0}});
  REQUIRE(dup.status == SolveStatus::optimal);
  CHECK_THAT(dup.objective, Catch::Matchers::WithinAbs(1.5, 1e-9));
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
  // x >= 2 and x <= 1 cannot hold together
  const SimplexResult bad = solve_dense_simplex(1, true, {{0, 1.0}},
                                                {SimplexRow{{{0, 1.0}}, RowSense::ge, 2.0},
                                                 SimplexRow{{{0, 1.0}}, RowSense::le, 1.0}});
  CHECK(bad.status == SolveStatus::infeasible);

  // max x with no ceiling
  const SimplexResult free =
      solve_dense_simplex(2, true, {{0, 1.0}}, {SimplexRow{{{1, 1.0}}, RowSense::le, 5.0}});
  CHECK(free.status == SolveStatus::unbounded);

  // minimization reaches zero at the origin
  const SimplexResult min =
      solve_dense_simplex(1, false, {{0, 1.0}}, {SimplexRow{{{0, 1.0}}, RowSense::le, 9.0}});
  REQUIRE(min.status == SolveStatus::optimal);
  CHECK_THAT(min.objective, Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("lp config validation") {
  CHECK_THROWS_AS(LPConfig::standard(Variant::fixed_q2, 8, 5), std::domain_error);
  CHECK_THROWS_AS(LPConfig::standard(Variant::fixed_q2, 13, 4), std::domain_error);
  CHECK_THROWS_AS(LPConfig::standard(Variant::fixed_q2, 8, 0), std::domain_error);
  const LPConfig cfg = LPConfig::standard(Variant::fixed_q2, 8, 4);
  CHECK(cfg.accept_items == std::vector<int>{0, 1, 2, 3});
  CHECK(cfg.reject_items == std::vector<int>{4, 5, 6, 7});
  CHECK(cfg.optimum.bits() == 0xF0u);
}

TEST_CASE("build_lp row counts match the generators") {
  const LPModel q2 = build_lp(LPConfig::standard(Variant::fixed_q2, 8, 4));
  CHECK(q2.num_vars == 256);
  CHECK(q2.count(RowTag::submodular) == 1792);  // C(8,2) * 2^6
  CHECK(q2.count(RowTag::singleton_eq) == 56);
  CHECK(q2.count(RowTag::prefix_eq) == 44);
  CHECK(q2.count(RowTag::trap) == 81);
  CHECK(q2.count(RowTag::nonneg) == 256);
  CHECK(q2.count(RowTag::normalized) == 1);

  const LPModel q3 = build_lp(LPConfig::standard(Variant::fixed_q3, 8, 4));
  CHECK(q3.count(RowTag::subset_eq) == 170);  // 2 * sum 4^i
  CHECK(q3.count(RowTag::singleton_eq) == 56);

  const LPModel ad = build_lp(LPConfig::standard(Variant::adaptive_q2, 8, 4));
  CHECK(ad.count(RowTag::allpairs_eq) == 420);  // 2 * sum 2^i C(8-i,2)
  CHECK(ad.count(RowTag::singleton_eq) == 0);   // subsumed by the all-pairs family
}

TEST_CASE("small lp objectives are exact") {
  const LPSolution q2 = solve_lp(build_lp(LPConfig::standard(Variant::fixed_q2, 6, 3)));
  REQUIRE(q2.status == SolveStatus::optimal);
  CHECK_THAT(q2.objective, Catch::Matchers::WithinAbs(2.25, 1e-6));
  CHECK(q2.max_residual <= 1e-7);

  const LPSolution q3 = solve_lp(build_lp(LPConfig::standard(Variant::fixed_q3, 6, 3)));
  REQUIRE(q3.status == SolveStatus::optimal);
  CHECK_THAT(q3.objective, Catch::Matchers::WithinAbs(2.0, 1e-6));
  const LPSolution ad = solve_lp(build_lp(LPConfig::standard(Variant::adaptive_q2, 6, 3)));
  REQUIRE(ad.status == SolveStatus::optimal);
  CHECK_THAT(ad.objective, Catch::Matchers::WithinAbs(2.25, 1e-6));

  // tighter constraint families cannot raise the optimum
  CHECK(q3.objective <= q2.objective + 1e-6);
  CHECK(ad.objective <= q2.objective + 1e-6);
}

TEST_CASE("verify_solution audits assignments independently") {
  const LPModel model = build_lp(LPConfig::standard(Variant::fixed_q2, 6, 3));
  // the zero assignment satisfies every row and scores zero
  const ResidualReport zero = verify_solution(model, std::vector<double>(64, 0.0));
  CHECK(zero.max_violation == 0.0);
  CHECK(zero.objective == 0.0);

  // a blatantly infeasible assignment is flagged with its worst row
  std::vector<double> bad(64, 0.0);
  bad[1] = 5.0;  // breaks a singleton equality and a trap row
  const ResidualReport flagged = verify_solution(model, bad);
  CHECK(flagged.max_violation >= 4.0);
  CHECK(flagged.worst_row >= 0);
}

TEST_CASE("solved certificates verify end to end") {
  for (Variant v : {Variant::fixed_q2, Variant::fixed_q3, Variant::adaptive_q2}) {
    const LPConfig cfg = LPConfig::standard(v, 6, 3);
    const LPModel model = build_lp(cfg);
    const LPSolution sol = solve_lp(model);
    REQUIRE(sol.status == SolveStatus::optimal);
    const CertificateBuild build = solution_to_function(sol, cfg);
    CHECK(build.submodularity.ok);
    CHECK(build.conditions.ok);
    CHECK_THAT(build.conditions.target_value, Catch::Matchers::WithinAbs(sol.objective, 1e-6));
    // snapping makes the forced equalities exact
    for (const EqualityPair& p :
         variant_equalities(v, cfg.n, cfg.accept_items, cfg.reject_items, cfg.k))
      CHECK(build.certificate.fn.values()[p.lhs] == build.certificate.fn.values()[p.rhs]);
  }
}

TEST_CASE("solution_to_function rejects broken inputs") {
  const LPConfig cfg = LPConfig::standard(Variant::fixed_q2, 4, 2);
  LPSolution sol = solve_lp(build_lp(cfg));
  REQUIRE(sol.status == SolveStatus::optimal);
  sol.values[3] -= 2.0;  // wreck submodularity and the equalities
  CHECK_THROWS_AS(solution_to_function(sol, cfg), CertificateError);

  LPSolution unsolved;
  unsolved.status = SolveStatus::infeasible;
  CHECK_THROWS_AS(solution_to_function(unsolved, cfg), CertificateError);
}

TEST_CASE("lp text export and import round trip") {
  LPModel toy;
  toy.name = "toy";
  toy.num_vars = 3;
  toy.maximize = true;
  toy.objective = {{2, 1.0}};
  toy.rows = {LPRow{{{0, 1.0}, {1, 1.0}}, RowSense::le, 1.0, RowTag::trap},
              LPRow{{{1, 1.0}, {2, -1.0}}, RowSense::eq, 0.0, RowTag::singleton_eq},
              LPRow{{{0, 1.0}, {1, 2.0}, {2, -1.0}}, RowSense::ge, -0.5, RowTag::submodular}};
  std::stringstream buf;
  export_lp_text(toy, buf);
  const LPModel back = parse_lp_text(buf);
  CHECK(back.num_vars == 3);
  CHECK(back.maximize);
  REQUIRE(back.objective.size() == 1);
  CHECK(back.objective[0] == std::pair<int, double>{2, 1.0});
  REQUIRE(back.rows.size() == toy.rows.size());
  for (std::size_t i = 0; i < toy.rows.size(); ++i) {
    CHECK(back.rows[i].terms == toy.rows[i].terms);
    CHECK(back.rows[i].sense == toy.rows[i].sense);
    CHECK(back.rows[i].rhs == toy.rows[i].rhs);
  }

  // imported models solve like the originals
  const LPSolution direct = solve_lp(toy);
  const LPSolution imported = solve_lp(back);
  REQUIRE(direct.status == SolveStatus::optimal);
  REQUIRE(imported.status == SolveStatus::optimal);
  CHECK_THAT(direct.objective, Catch::Matchers::WithinAbs(imported.objective, 1e-9));
}

TEST_CASE("family model text round trips with an identical row set") {
  const LPModel model = build_lp(LPConfig::standard(Variant::fixed_q2, 4, 2));
  std::stringstream buf;
  export_lp_text(model, buf);
  const LPModel back = parse_lp_text(buf);
  REQUIRE(back.rows.size() == model.rows.size());
  CHECK(back.num_vars == model.num_vars);
  auto canonical = [](const LPModel& m) {
    std::vector<std::string> rows;
    for (const LPRow& r : m.rows) {
      std::ostringstream os;
      os << static_cast<int>(r.sense) << '|' << r.rhs << '|';
      for (auto [j, c] : r.terms) os << j << ':' << c << ',';
      rows.push_back(os.str());
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  CHECK(canonical(back) == canonical(model));
}

TEST_CASE("solve_lp handles large finite optima and unbounded models") {
  // optimum far beyond the initial guard bound
  LPModel big;
  big.num_vars = 1;
  big.maximize = true;
  big.objective = {{0, 1.0}};
  big.rows = {LPRow{{{0, 1.0}}, RowSense::le, 5000.0, RowTag::external}};
  const LPSolution sol = solve_lp(big);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK_THAT(sol.objective, Catch::Matchers::WithinAbs(5000.0, 1e-6));

  // nothing caps the objective at all
  LPModel free;
  free.num_vars = 2;
  free.maximize = true;
  free.objective = {{0, 1.0}};
  free.rows = {LPRow{{{1, 1.0}}, RowSense::le, 1.0, RowTag::external}};
  CHECK(solve_lp(free).status == SolveStatus::unbounded);
}
