#include <doctest.h>

#include "ckb/representation.hpp"
#include "ckb/sfs.hpp"
#include "testutil.hpp"

using namespace ckb;
using ckbtest::alpha_3x3;
using ckbtest::sample_3x3;
using ckbtest::stationary_P;

TEST_CASE("level spaces") {
  Diagram D = sample_3x3();
  MeasureSpec mu = resolve_spec(D, MeasureSpec::invariant());
  SUBCASE("dimension at depth 2 is 12 and weights are 1/6 at depth 1") {
    LevelSpace H2 = level_space(D, mu, 2);
    CHECK(H2.dim() == 12);
    LevelSpace H1 = level_space(D, mu, 1);
    for (const Scalar& m : H1.measures) CHECK(m.rat() == Rat(1, 6));
  }
  SUBCASE("trivial diagram has a one-dimensional space with weight 1") {
    Diagram one = Diagram::from_matrix(ZeroOneMatrix::from_rows({{1}}));
    LevelSpace H = level_space(one, resolve_spec(one, MeasureSpec::invariant()), 1);
    CHECK(H.dim() == 1);
    CHECK(H.measures[0].rat() == Rat(1));
  }
}

TEST_CASE("edge operators are permutation-type partial isometries") {
  Diagram D = sample_3x3();
  LevelContext ctx(D, MeasureSpec::invariant(), 4);
  SUBCASE("columns have at most one entry, equal to 1") {
    for (EdgeId e = 0; e < 6; ++e)
      for (int k = 0; k <= 3; ++k) CHECK(edge_operator(ctx, e, k).is_partial_permutation());
  }
  SUBCASE("T_e1 at depth 1 moves exactly the two words based at vertex 1") {
    LevelOperator T = edge_operator(ctx, 0, 1);
    CHECK(T.entries().size() == 2);
    const LevelSpace& H1 = ctx.space(1);
    const LevelSpace& H2 = ctx.space(2);
    CHECK(T.at(H2.index_of(make_word(D.edges, {0, 0})), H1.index_of(make_word(D.edges, {0}))).same(Scalar(1)));
    CHECK(T.at(H2.index_of(make_word(D.edges, {0, 1})), H1.index_of(make_word(D.edges, {1}))).same(Scalar(1)));
  }
  SUBCASE("T*T and TT* are the domain and range projections") {
    for (EdgeId e = 0; e < 6; ++e)
      for (int k = 1; k <= 3; ++k) {
        LevelOperator T = edge_operator(ctx, e, k);
        CHECK(T.adjoint().multiply(T).minus(domain_projection(ctx, e, k)).is_exactly_zero());
        LevelOperator Tdown = edge_operator(ctx, e, k - 1);
        CHECK(Tdown.multiply(Tdown.adjoint()).minus(range_projection(ctx, e, k)).is_exactly_zero());
      }
  }
}

TEST_CASE("Cuntz-Krieger relations hold exactly at every level") {
  Diagram D = sample_3x3();
  SUBCASE("invariant measure") {
    LevelContext ctx(D, MeasureSpec::invariant(), 7);
    for (int k = 1; k <= 6; ++k) {
      CHECK(ck_verify_edge(ctx, k).is_exact_zero());
      CHECK(ck_verify_vertex(ctx, k).is_exact_zero());
    }
  }
  SUBCASE("stationary measure") {
    LevelContext ctx(D, stationary_P(Rat(2, 7)), 5);
    for (int k = 1; k <= 4; ++k) {
      CHECK(ck_verify_edge(ctx, k).is_exact_zero());
      CHECK(ck_verify_vertex(ctx, k).is_exact_zero());
    }
  }
  SUBCASE("trivial diagram: the single isometry satisfies T*T = TT* = I") {
    Diagram one = Diagram::from_matrix(ZeroOneMatrix::from_rows({{1}}));
    LevelContext ctx(one, MeasureSpec::invariant(), 4);
    for (int k = 1; k <= 3; ++k) {
      CHECK(ck_verify_edge(ctx, k).is_exact_zero());
      CHECK(ck_verify_vertex(ctx, k).is_exact_zero());
    }
  }
}

TEST_CASE("cross terms vanish: T_e T*_e' = 0 for distinct edges with equal source") {
  Diagram D = sample_3x3();
  LevelContext ctx(D, MeasureSpec::invariant(), 4);
  for (EdgeId e = 0; e < 6; ++e)
    for (EdgeId f = 0; f < 6; ++f) {
      if (e == f || D.edges.source(e) != D.edges.source(f)) continue;
      for (int k = 1; k <= 3; ++k) {
        LevelOperator prod =
            edge_operator(ctx, e, k - 1).multiply(edge_operator(ctx, f, k - 1).adjoint());
        CHECK(prod.is_exactly_zero());
      }
    }
}

TEST_CASE("monotonicity: relations verified at depth k+1 restrict to depth k") {
  Diagram D = sample_3x3();
  LevelContext ctx(D, stationary_P(Rat(1, 3)), 6);
  std::vector<Scalar> residuals;
  for (int k = 1; k <= 5; ++k) residuals.push_back(ck_verify_edge(ctx, k));
  for (size_t i = 0; i + 1 < residuals.size(); ++i) {
    bool pass_higher = residuals[i + 1].is_exact_zero();
    bool pass_lower = residuals[i].is_exact_zero();
    if (pass_higher) CHECK(pass_lower);
  }
}

TEST_CASE("inclusions are exact isometries with zero shift defect for stationary data") {
  Diagram D = sample_3x3();
  LevelContext inv(D, MeasureSpec::invariant(), 5);
  LevelContext st(D, stationary_P(Rat(3, 8)), 5);
  for (int k = 0; k <= 3; ++k) {
    CHECK(inclusion_isometry_exact(inv, k));
    CHECK(inclusion_isometry_exact(st, k));
    for (EdgeId e = 0; e < 6; ++e) {
      CHECK(operator_consistency(inv, e, k).exactly_zero);
      CHECK(operator_consistency(st, e, k).exactly_zero);
    }
  }
}

TEST_CASE("alternating sequences produce the closed-form inclusion defect") {
  Diagram D = sample_3x3();
  Rat p(1, 3), q(2, 3);
  std::vector<Scalar> P = {Scalar(p), Scalar(q), Scalar(p), Scalar(q), Scalar(q), Scalar(p)};
  std::vector<Scalar> Q = {Scalar(q), Scalar(p), Scalar(q), Scalar(p), Scalar(p), Scalar(q)};
  std::vector<std::vector<Scalar>> ps;
  for (int i = 0; i < 8; ++i) ps.push_back(i % 2 ? Q : P);
  MeasureSpec seq = MeasureSpec::sequence(std::vector<Scalar>(3, Scalar(Rat(1, 3))), ps,
                                          TailRule::RepeatLast);
  LevelContext ctx(D, seq, 4);
  bool found_nonzero = false;
  for (EdgeId e = 0; e < 6; ++e)
    for (int k = 0; k <= 2; ++k) {
      ConsistencyReport rep = operator_consistency(ctx, e, k);
      for (const ConsistencyEntry& entry : rep.entries) {
        // Cross-check the closed form: parent ratio is a step-(k+1) value,
        // shifted ratio the step-(k+2) value of the same edge.
        CylinderWord wf = entry.word;
        if (wf.edges.empty()) wf.base = D.edges.source(entry.child);
        wf.edges.push_back(entry.child);
        Scalar direct_parent = cylinder_measure(D, seq, wf) / cylinder_measure(D, seq, entry.word);
        CylinderWord ew = prepend(D.edges, e, entry.word);
        CylinderWord ewf = prepend(D.edges, e, wf);
        Scalar direct_shifted = cylinder_measure(D, seq, ewf) / cylinder_measure(D, seq, ew);
        CHECK(entry.ratio_parent.rat() == direct_parent.rat());
        CHECK(entry.ratio_shifted.rat() == direct_shifted.rat());
        if (entry.ratio_parent.rat() != entry.ratio_shifted.rat()) found_nonzero = true;
      }
      if (!rep.exactly_zero) CHECK(rep.max_defect > 0.0);
    }
  CHECK(found_nonzero);
}

TEST_CASE("intertwiner checks for the 3-cycle self-map") {
  Diagram D = sample_3x3();
  AdmissibleMap alpha = alpha_3x3();
  SUBCASE("invariant measure on both sides: everything exact") {
    LevelContext ctx(D, MeasureSpec::invariant(), 4);
    IntertwinerReport r = intertwiner_check(ctx, ctx, alpha, 4);
    CHECK(r.unitary);
    CHECK(r.commutes);
    CHECK(r.inclusion_compatible);
    CHECK(r.predicate_name == "invariant_compat");
    CHECK(r.predicate);
    CHECK(r.verdicts_agree);
  }
  SUBCASE("orbit-aligned stationary measure: compatible, matching the predicate") {
    LevelContext ctx(D, stationary_P(Rat(1, 3)), 4);
    IntertwinerReport r = intertwiner_check(ctx, ctx, alpha, 4);
    CHECK(r.unitary);
    CHECK(r.commutes);
    CHECK(r.inclusion_compatible);
    CHECK(r.predicate_name == "stationary_compat");
    CHECK(r.verdicts_agree);
  }
  SUBCASE("perturbing one entry flips only the measure verdict") {
    Rat p = Rat(1, 3) + Rat(1, 100);
    Rat scale = Rat(1) + Rat(1, 100);
    std::vector<Scalar> row = {Scalar(p / scale),           Scalar(Rat(2, 3) / scale),
                               Scalar(Rat(1, 3)),           Scalar(Rat(2, 3)),
                               Scalar(Rat(2, 3)),           Scalar(Rat(1, 3))};
    MeasureSpec perturbed =
        MeasureSpec::stationary(std::vector<Scalar>(3, Scalar(Rat(1, 3))), row);
    REQUIRE(!validate_spec(D, perturbed).has_value());
    LevelContext ctx(D, perturbed, 4);
    IntertwinerReport r = intertwiner_check(ctx, ctx, alpha, 4);
    CHECK(r.unitary);
    CHECK(r.commutes);            // combinatorial identity, measure independent
    CHECK(!r.inclusion_compatible);
    CHECK(r.inclusion_witness.has_value());
    CHECK(!r.predicate);
    CHECK(r.verdicts_agree);      // both verdicts fail together
  }
  SUBCASE("non-admissible maps are rejected") {
    LevelContext ctx(D, MeasureSpec::invariant(), 2);
    AdmissibleMap bad;
    bad.map = {1, 0, 2, 3, 4, 5};
    CHECK_THROWS_AS(intertwiner_check(ctx, ctx, bad, 2), InvalidInputError);
  }
}

TEST_CASE("intertwiner across the 4x4 pair with invariant measures") {
  LevelContext ctx(ckbtest::sample_4x4_a(), MeasureSpec::invariant(), 3);
  LevelContext ctx_p(ckbtest::sample_4x4_b(), MeasureSpec::invariant(), 3);
  IntertwinerReport r = intertwiner_check(ctx, ctx_p, ckbtest::alpha_4x4(), 3);
  CHECK(r.unitary);
  CHECK(r.commutes);
  CHECK(r.inclusion_compatible);
  CHECK(r.verdicts_agree);
}

TEST_CASE("monic systems of the invariant measure") {
  Diagram D = sample_3x3();
  MonicSystem ms = monic_from_measure(D, MeasureSpec::invariant());
  SUBCASE("f_i^2 = 2 on R_i, support exact, g_i f_i = 1 on R_i") {
    auto words = vertex_shift(D.A).words(4);
    for (const auto& raw : words) {
      std::vector<Vertex> vw(raw.begin(), raw.end());
      for (Vertex i = 0; i < 3; ++i) {
        Scalar fsq = monic_f_sq(D, ms, i, vw);
        if (vw.front() == i) {
          CHECK(fsq.rat() == Rat(2));
          CHECK(std::sqrt(fsq.as_double()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
          CHECK((monic_g_sq(D, ms, i, vw) * fsq).rat() == Rat(1));
        } else {
          CHECK(fsq.is_exact_zero());
        }
      }
    }
  }
  SUBCASE("f_i^2 m(C) = m(sigma C) exactly") {
    MeasureSpec nu = stationary_P(Rat(2, 5));
    MonicSystem msv = monic_from_measure(D, nu);
    auto words = vertex_shift(D.A).words(3);
    for (const auto& raw : words) {
      std::vector<Vertex> vw(raw.begin(), raw.end());
      Vertex i = vw.front();
      Scalar fsq = monic_f_sq(D, msv, i, vw);
      Scalar mC = cylinder_measure(D, nu, vertex_to_edge_word(D, vw));
      std::vector<Vertex> shifted(vw.begin() + 1, vw.end());
      Scalar msC = cylinder_measure(D, nu, vertex_to_edge_word(D, shifted));
      CHECK((fsq * mC).rat() == msC.rat());
    }
  }
}

TEST_CASE("monic verdict: projections, compositions, and cyclicity dimension") {
  Diagram D = sample_3x3();
  MonicSystem ms = monic_from_measure(D, MeasureSpec::invariant());
  MonicVerdict v = monic_operators_check(D, ms, 3);
  CHECK(v.projections_diagonal_01);
  CHECK(v.compositions_match);
  CHECK(v.space_dim == 24);
  CHECK(v.span_dim == 24);
  CHECK(v.monic);
}

TEST_CASE("vertex operators agree with sums of edge operators under translation") {
  Diagram D = sample_3x3();
  LevelContext ctx(D, stationary_P(Rat(1, 3)), 5);
  for (int k = 0; k <= 4; ++k)
    for (Vertex i = 0; i < 3; ++i) {
      LevelOperator direct = vertex_operator(ctx, i, k);
      LevelOperator summed(ctx.space(k + 1).dim(), ctx.space(k).dim());
      for (EdgeId e : D.edges.out_edges(i)) summed = summed.plus(edge_operator(ctx, e, k));
      CHECK(direct.minus(summed).is_exactly_zero());
      CHECK(direct.is_partial_permutation());
    }
}

TEST_CASE("monic equivalence") {
  Diagram D = sample_3x3();
  MonicSystem base = monic_from_measure(D, MeasureSpec::invariant());
  SUBCASE("a system is equivalent to itself with h = 1") {
    MonicEquivalence eq = monic_equivalence(D, base, base, 4);
    CHECK(eq.verdict == MonicEquivalence::Verdict::Equivalent);
    for (const auto& [vw, hsq] : eq.h_sq) CHECK(hsq.rat() == Rat(1));
  }
  SUBCASE("scaling by a first-letter density is recovered exactly") {
    // m'(w) = d(w_1) m(w) / Z realized as a two-step Markov sequence.
    std::vector<Rat> d = {Rat(2), Rat(1), Rat(3), Rat(1), Rat(1), Rat(2)};
    MeasureSpec st = invariant_as_markov(D, perron_data(D.A));
    std::vector<Rat> S(3, Rat(0));
    for (EdgeId e = 0; e < 6; ++e) S[D.edges.source(e)] += d[e] * st.ps[0][e].rat();
    Rat Z(0);
    for (Vertex v = 0; v < 3; ++v) Z += st.pi[v].rat() * S[v];
    std::vector<Scalar> pi(3), first(6);
    for (Vertex v = 0; v < 3; ++v) pi[v] = Scalar(st.pi[v].rat() * S[v] / Z);
    for (EdgeId e = 0; e < 6; ++e)
      first[e] = Scalar(d[e] * st.ps[0][e].rat() / S[D.edges.source(e)]);
    MeasureSpec scaled =
        MeasureSpec::sequence(pi, {first, st.ps[0]}, TailRule::RepeatLast);
    REQUIRE(!validate_spec(D, scaled).has_value());

    MonicSystem other = monic_from_measure(D, scaled);
    MonicEquivalence eq = monic_equivalence(D, base, other, 4);
    CHECK(eq.verdict == MonicEquivalence::Verdict::Equivalent);
    CHECK(eq.h_stabilization_depth == 1);
    for (const auto& [vw, hsq] : eq.h_sq) {
      EdgeId first_edge = *D.edges.edge_between(vw[0], vw[1]);
      CHECK(hsq.rat() == d[first_edge] / Z);
    }
  }
  SUBCASE("two stationary systems with different rows are not equivalent") {
    MonicSystem a = monic_from_measure(D, stationary_P(Rat(1, 3)));
    MonicSystem b = monic_from_measure(D, stationary_P(Rat(1, 2)));
    MonicEquivalence eq = monic_equivalence(D, a, b, 4);
    CHECK(eq.verdict == MonicEquivalence::Verdict::NotEquivalent);
    CHECK(eq.failed_check == "h-consistency");
    CHECK(eq.witness.has_value());
  }
  SUBCASE("function data disagreeing with the shared measure fails the intertwining check") {
    MonicSystem a = monic_from_measure(D, stationary_P(Rat(1, 3)));
    MonicSystem b;
    b.measure = resolve_spec(D, stationary_P(Rat(1, 3)));
    b.f_source = resolve_spec(D, stationary_P(Rat(1, 2)));
    MonicEquivalence eq = monic_equivalence(D, a, b, 3);
    CHECK(eq.verdict == MonicEquivalence::Verdict::NotEquivalent);
    CHECK(eq.failed_check == "intertwining");
    CHECK(eq.witness.has_value());
  }
}

TEST_CASE("randomized property suite on small primitive matrices") {
  for (unsigned seed = 100; seed < 112; ++seed) {
    Diagram D = Diagram::from_matrix(ckbtest::random_primitive_matrix(seed, 4));
    MeasureSpec nu = ckbtest::random_stationary_spec(D, seed);
    LevelContext ctx(D, nu, 4);
    for (int k = 1; k <= 3; ++k) {
      CHECK(ck_verify_edge(ctx, k).is_exact_zero());
      CHECK(ck_verify_vertex(ctx, k).is_exact_zero());
    }
    for (int k = 0; k <= 2; ++k) CHECK(inclusion_isometry_exact(ctx, k));
  }
}
