#include <doctest.h>

#include <set>

#include "ckb/admissible.hpp"
#include "testutil.hpp"

using namespace ckb;
using ckbtest::alpha_3x3;
using ckbtest::alpha_4x4;
using ckbtest::sample_3x3;
using ckbtest::sample_4x4_a;
using ckbtest::sample_4x4_b;
using ckbtest::stationary_P;

TEST_CASE("admissibility of the bundled maps") {
  Diagram D = sample_3x3();
  CHECK(is_admissible(D, D, alpha_3x3().map).admissible);
  std::vector<EdgeId> identity = {0, 1, 2, 3, 4, 5};
  CHECK(is_admissible(D, D, identity).admissible);
  CHECK(is_admissible(sample_4x4_a(), sample_4x4_b(), alpha_4x4().map).admissible);
}

TEST_CASE("swapping e1 and e2 is caught at the pair (e1,e1)") {
  Diagram D = sample_3x3();
  std::vector<EdgeId> swapped = {1, 0, 2, 3, 4, 5};
  auto check = is_admissible(D, D, swapped);
  CHECK(!check.admissible);
  REQUIRE(check.witness.has_value());
  // (e1,e1) is linked but its image (e2,e2) is not: r(e2) = 2, s(e2) = 1.
  CHECK(check.witness->first == 0);
  CHECK(check.witness->second == 0);
}

TEST_CASE("size and bijection validation") {
  Diagram D = sample_3x3();
  Diagram one = Diagram::from_matrix(ZeroOneMatrix::from_rows({{1}}));
  CHECK_THROWS_AS(is_admissible(D, one, {0}), InvalidInputError);
  CHECK_THROWS_AS(is_admissible(D, D, {0, 0, 2, 3, 4, 5}), InvalidInputError);
}

TEST_CASE("search equals the brute-force filter on the 3x3 self-maps") {
  Diagram D = sample_3x3();
  auto found = find_admissible(D, D);
  auto expected = ckbtest::brute_force_admissible(D, D);
  REQUIRE(found.size() == expected.size());
  for (size_t i = 0; i < found.size(); ++i) CHECK(found[i].map == expected[i]);
  // Contains the identity and the 3-cycle.
  std::set<std::vector<EdgeId>> all;
  for (const auto& m : found) all.insert(m.map);
  CHECK(all.count({0, 1, 2, 3, 4, 5}) == 1);
  CHECK(all.count(alpha_3x3().map) == 1);
}

TEST_CASE("search equals the brute-force filter on the 4x4 pair") {
  Diagram A = sample_4x4_a();
  Diagram Ap = sample_4x4_b();
  auto found = find_admissible(A, Ap);
  auto expected = ckbtest::brute_force_admissible(A, Ap);
  REQUIRE(found.size() == expected.size());
  for (size_t i = 0; i < found.size(); ++i) CHECK(found[i].map == expected[i]);
  std::set<std::vector<EdgeId>> all;
  for (const auto& m : found) all.insert(m.map);
  CHECK(all.count(alpha_4x4().map) == 1);
}

TEST_CASE("mismatched edge counts yield an empty list") {
  Diagram D = sample_3x3();
  Diagram one = Diagram::from_matrix(ZeroOneMatrix::from_rows({{1}}));
  CHECK(find_admissible(D, one).empty());
}

TEST_CASE("every found map has an admissible inverse and maps arrows to arrows") {
  Diagram D = sample_3x3();
  for (const AdmissibleMap& alpha : find_admissible(D, D)) {
    CHECK(is_admissible(D, D, alpha.inverse().map).admissible);
    auto arrows = linked_pairs(D.edges);
    std::set<std::pair<EdgeId, EdgeId>> image;
    for (auto [e, f] : arrows) image.insert({alpha(e), alpha(f)});
    CHECK(image == std::set<std::pair<EdgeId, EdgeId>>(arrows.begin(), arrows.end()));
  }
  // Random non-bijective-looking bijections: inadmissibility is symmetric.
  auto& gen = ckbtest::rng(99);
  std::vector<EdgeId> perm = {0, 1, 2, 3, 4, 5};
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(perm.begin(), perm.end(), gen);
    AdmissibleMap a;
    a.map = perm;
    bool fwd = is_admissible(D, D, a.map).admissible;
    bool bwd = is_admissible(D, D, a.inverse().map).admissible;
    CHECK(fwd == bwd);
  }
}

TEST_CASE("path map applies alpha letterwise and preserves structure") {
  Diagram D = sample_3x3();
  AdmissibleMap alpha = alpha_3x3();
  SUBCASE("(e1,e1) maps to the linked word (e3,e3)") {
    CylinderWord w = make_word(D.edges, {0, 0});
    CylinderWord img = path_map(D, D, alpha, w);
    CHECK(img.edges == std::vector<EdgeId>{2, 2});
  }
  SUBCASE("depth is preserved and the map is a bijection on each level") {
    for (int k = 1; k <= 6; ++k) {
      std::set<CylinderWord> images;
      for (const auto& w : path_words(D, k)) {
        CylinderWord img = path_map(D, D, alpha, w);
        CHECK(img.depth() == k);
        images.insert(img);
      }
      CHECK(images.size() == path_words(D, k).size());
    }
  }
  SUBCASE("path map commutes with the coding map") {
    for (int k = 2; k <= 5; ++k)
      for (const auto& w : path_words(D, k)) {
        CylinderWord lhs = drop_first(D.edges, path_map(D, D, alpha, w));
        CylinderWord rhs = path_map(D, D, alpha, drop_first(D.edges, w));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("invariant measure compatibility") {
  Diagram D = sample_3x3();
  SUBCASE("the 3-cycle self-map preserves the invariant measure exactly") {
    InvariantCompat r = invariant_compat(D, D, alpha_3x3(), 4);
    CHECK(r.equal);
    CHECK(r.max_defect.is_exact_zero());
  }
  SUBCASE("identity map on any diagram") {
    Diagram R = Diagram::from_matrix(ckbtest::random_primitive_matrix(7));
    AdmissibleMap id;
    id.map.resize(R.edge_count());
    for (EdgeId e = 0; e < R.edge_count(); ++e) id.map[e] = e;
    InvariantCompat r = invariant_compat(R, R, id, 3);
    CHECK(r.equal);
  }
  SUBCASE("the 4x4 pair has equal eigenvalues and matching measures") {
    InvariantCompat r = invariant_compat(sample_4x4_a(), sample_4x4_b(), alpha_4x4(), 4);
    CHECK(r.equal);
    CHECK(r.lambda.as_double() == doctest::Approx(r.lambda_p.as_double()).epsilon(1e-12));
    CHECK(r.max_defect.as_double() <= 1e-10);
  }
}

TEST_CASE("stationary measure compatibility") {
  Diagram D = sample_3x3();
  AdmissibleMap alpha = alpha_3x3();
  SUBCASE("the orbit-aligned P is alpha-invariant for any p") {
    for (Rat p : {Rat(1, 3), Rat(2, 5), Rat(9, 11)}) {
      MeasureSpec nu = stationary_P(p);
      CHECK(stationary_compat(D, D, nu, nu, alpha).invariant);
    }
  }
  SUBCASE("every self-map preserves the orbit weight classes") {
    // The coupled graph has exactly three automorphisms (identity, the
    // 3-cycle, and its square), and all of them fix the p/q orbits, so
    // the same P on both sides is compatible with each of them.
    MeasureSpec nu = stationary_P(Rat(1, 3));
    auto maps = find_admissible(D, D);
    CHECK(maps.size() == 3);
    for (const AdmissibleMap& m : maps) CHECK(stationary_compat(D, D, nu, nu, m).invariant);
  }
  SUBCASE("a map sending a p-edge to a q-edge fails when p != q") {
    // Rearranging the same weights (row 2 swapped) makes every automorphism
    // move a p-weighted edge onto a q-weighted edge, which the exact
    // comparison must reject with a witness.
    Rat p(1, 3), q(2, 3);
    MeasureSpec nu = stationary_P(p);
    std::vector<Scalar> row = {Scalar(p), Scalar(q), Scalar(q), Scalar(p), Scalar(q), Scalar(p)};
    MeasureSpec nu_alt =
        MeasureSpec::stationary(std::vector<Scalar>(3, Scalar(Rat(1, 3))), row);
    bool found_failing_map = false;
    for (const AdmissibleMap& other : find_admissible(D, D)) {
      bool sends_p_to_q = false;
      for (EdgeId e = 0; e < 6; ++e)
        if (!nu_alt.ps[0][other(e)].same(nu.ps[0][e])) sends_p_to_q = true;
      if (!sends_p_to_q) continue;
      found_failing_map = true;
      StationaryCompat r = stationary_compat(D, D, nu, nu_alt, other);
      CHECK(!r.invariant);
      CHECK(r.witness.has_value());
    }
    CHECK(found_failing_map);
  }
  SUBCASE("p = q = 1/2 makes every admissible map compatible") {
    MeasureSpec nu = stationary_P(Rat(1, 2));
    for (const AdmissibleMap& m : find_admissible(D, D))
      CHECK(stationary_compat(D, D, nu, nu, m).invariant);
  }
}

TEST_CASE("Markov sequence compatibility") {
  Diagram D = sample_3x3();
  AdmissibleMap alpha = alpha_3x3();
  SUBCASE("lifted stationary specs reduce to the stationary verdict") {
    MeasureSpec good = stationary_P(Rat(1, 3));
    MarkovCompat ok = markov_compat(D, D, as_sequence(D, good), as_sequence(D, good), alpha, 5);
    CHECK(ok.equivalent);
    // A non-alpha-invariant stationary spec: uniform rows except a twist.
    std::vector<Scalar> row = {Scalar(Rat(1, 4)), Scalar(Rat(3, 4)), Scalar(Rat(1, 3)),
                               Scalar(Rat(2, 3)), Scalar(Rat(2, 3)), Scalar(Rat(1, 3))};
    MeasureSpec bad = MeasureSpec::stationary(std::vector<Scalar>(3, Scalar(Rat(1, 3))), row);
    CHECK(!stationary_compat(D, D, bad, bad, alpha).invariant);
    MarkovCompat fail = markov_compat(D, D, as_sequence(D, bad), as_sequence(D, bad), alpha, 5);
    CHECK(!fail.equivalent);
    CHECK(fail.witness.has_value());
  }
  SUBCASE("summable perturbations with stabilizing tails are equivalent") {
    // Rows p +- eps_n settle on the alpha-invariant pattern.
    auto rows = [](const Rat& eps) {
      Rat p(1, 3), q(2, 3);
      return std::vector<Scalar>{Scalar(p),       Scalar(q),       Scalar(p + eps),
                                 Scalar(q - eps), Scalar(q + eps), Scalar(p - eps)};
    };
    std::vector<std::vector<Scalar>> ps = {rows(Rat(1, 10)), rows(Rat(1, 30)), rows(Rat(0))};
    MeasureSpec m = MeasureSpec::sequence(std::vector<Scalar>(3, Scalar(Rat(1, 3))), ps,
                                          TailRule::RepeatLast);
    MarkovCompat r = markov_compat(D, D, m, m, alpha, 6);
    CHECK(r.equivalent);
  }
  SUBCASE("never-stabilizing ratios give a singular verdict with the loop witness") {
    Rat p(1, 3), q(2, 3);
    std::vector<Scalar> P = {Scalar(p), Scalar(q), Scalar(p), Scalar(q), Scalar(q), Scalar(p)};
    std::vector<Scalar> Q = {Scalar(q), Scalar(p), Scalar(q), Scalar(p), Scalar(p), Scalar(q)};
    std::vector<std::vector<Scalar>> ps;
    for (int i = 0; i < 13; ++i) ps.push_back(i % 2 ? Q : P);
    MeasureSpec m = MeasureSpec::sequence(std::vector<Scalar>(3, Scalar(Rat(1, 3))), ps,
                                          TailRule::RepeatLast);
    MeasureSpec st = as_sequence(D, stationary_P(p));
    MarkovCompat r = markov_compat(D, D, st, m, alpha, 6);
    CHECK(!r.equivalent);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->edges == std::vector<EdgeId>(6, 0));
  }
}
