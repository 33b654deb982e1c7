#include <doctest.h>

#include <set>

#include "bowditch/json_io.hpp"
#include "bowditch/oracle.hpp"
#include "bowditch/recognition.hpp"

using namespace bowditch;

namespace {

const Real kTol = Real("1e-9");

Representation<CayleyBackend> identity_rep() {
  CayleyBackend be;
  return Representation<CayleyBackend>(be, {Word("a"), Word("b"), Word("a")},
                                       {Word("a"), Word("b"), Word("b")});
}

Representation<PlaneBackend> modular_torus() {
  PlaneBackend be;
  return Representation<PlaneBackend>(be, PlaneIsometry{1, 1, 1, 2}, PlaneIsometry{1, -1, -1, 2});
}

}  // namespace

TEST_SUITE("recognition.lengths") {
  TEST_CASE("region lengths of the modular torus") {
    auto rep = modular_torus();
    Real expect = 2 * acosh(Real(3) / 2);
    CHECK(abs(rep.region_length(slope_infinity()) - expect) < kTol);
    CHECK(abs(rep.region_length(Slope{1, 1}) - expect) < kTol);
    CHECK(abs(rep.region_length(Slope{-1, 1}) - 2 * acosh(Real(3))) < kTol);
    CHECK(abs(expect - Real("1.9248473002384139")) < Real("1e-10"));
  }

  TEST_CASE("region lengths on the tree are word lengths") {
    auto rep = identity_rep();
    CHECK(rep.region_length(Slope{2, 1}) == 3);
    CHECK(rep.region_length(slope_infinity()) == 1);
    CHECK(rep.region_length(Slope{-3, 2}) == 5);
  }

  TEST_CASE("trace recursion equals the matrix route on a depth window") {
    auto rep = modular_torus();
    const PlaneBackend& be = rep.backend();
    for_each_region_to_depth(7, [&](const Slope& s) {
      Real via_cache = rep.region_length(s);
      Real direct = be.stable_norm(rep.image_of_word(primitive_word(s)));
      CHECK(abs(via_cache - direct) <= Real("1e-30") * std::max(Real(1), direct));
    });
  }
}

TEST_SUITE("recognition.orientation") {
  TEST_CASE("arrow points toward the shorter region") {
    auto rep = identity_rep();
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(rep.params()));
    // Edge {inf, 2/1}: completions 3/1 (length 4) and 1/1 (length 2).
    OrientedEdge oe = eng.orientation(Edge(slope_infinity(), Slope{2, 1}));
    CHECK(oe.head.contains(Slope{1, 1}));
    // Tie at the base edge: lengths 2 and 2, broken toward the lex-smaller.
    OrientedEdge tie = eng.orientation(base_edge().edge);
    CHECK(tie.head.contains(Slope{-1, 1}));
    OrientedEdge again = eng.orientation(base_edge().edge);
    CHECK(tie == again);
  }

  TEST_CASE("modular torus arrow follows the Markov traces") {
    auto rep = modular_torus();
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(rep.params()));
    // Edge {2/1, 1/1}: completions 3/2 (trace 15) and inf (trace 3).
    OrientedEdge oe = eng.orientation(Edge(Slope{2, 1}, Slope{1, 1}));
    CHECK(oe.head.contains(slope_infinity()));
  }
}

TEST_SUITE("recognition.growth") {
  TEST_CASE("tree growth constants at delta zero") {
    auto rep = identity_rep();
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(rep.params()));
    GrowthConstants g = eng.growth_constants(slope_infinity(), slope_zero(), +1);
    CHECK(g.k == 3);  // 3 d(Bo,o) + 2 d(p(o),o) = 3*1 + 0
    CHECK(g.N == 4);  // max(4*1, 2*1) / 1
  }

  TEST_CASE("plane growth constants in closed form") {
    PlaneBackend be;
    Real e1 = exp(Real(1));
    PlaneIsometry a{e1, 0, 0, 1 / e1};
    PlaneIsometry b{1, 1, 0, 1};
    Representation<PlaneBackend> rep(be, a, b);
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    GrowthConstants g = eng.growth_constants_for(a, b, +1);
    Real d_bo = acosh(Real(3) / 2);
    CHECK(abs(g.k - (3 * d_bo + 36 * be.params.delta)) < kTol);
    CHECK(abs(g.N - std::max(4 * d_bo + 51 * be.params.delta, 2 * d_bo + 5 * be.params.delta) / 2) < kTol);
  }

  TEST_CASE("N halves when the translation length doubles") {
    PlaneBackend be;
    Real e1 = exp(Real(1));
    PlaneIsometry a{e1, 0, 0, 1 / e1};
    PlaneIsometry a2 = be.compose(a, a);
    PlaneIsometry b{1, 1, 0, 1};
    Representation<PlaneBackend> rep(be, a, b);
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Real n1 = eng.growth_constants_for(a, b, +1).N;
    Real n2 = eng.growth_constants_for(a2, b, +1).N;
    CHECK(abs(n1 - 2 * n2) < kTol);
  }

  TEST_CASE("growth constants reject endpoint coincidences") {
    PlaneBackend be;
    Real e1 = exp(Real(1));
    PlaneIsometry a{e1, 0, 0, 1 / e1};
    PlaneIsometry b{0, -1, 1, 0};  // maps inf to 0
    Representation<PlaneBackend> rep(be, a, b);
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    CHECK_THROWS_AS(eng.growth_constants_for(a, b, +1), std::domain_error);
  }

  TEST_CASE("coincidence bound and its tree degeneration") {
    PlaneBackend be;
    Real e1 = exp(Real(1));
    PlaneIsometry a{e1, 0, 0, 1 / e1};
    PlaneIsometry b{0, -1, 1, 0};
    Representation<PlaneBackend> rep(be, a, b);
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Real n = eng.coincidence_bound_for(a, b);
    CHECK(n > 0);
    // tr(A^n B) = 0 for every n, so the lengths stay at 0 <= 30 delta.
    for (int k = 1; k <= 5; ++k)
      CHECK(be.stable_norm(be.compose(rep.power(a, k), b)) <= 30 * be.params.delta);

    auto tree = identity_rep();
    RecognitionEngine<CayleyBackend> teng(tree, Constants::make(tree.params()));
    CayleyIsometry ta{Word("a"), Word("b"), Word("a")};
    CayleyIsometry tb{Word("a"), Word("b"), Word("b")};
    // With delta = 0 the max collapses to 5 d(Bo,o) / l_S(A).
    CHECK(teng.coincidence_bound_for(ta, tb) == 5);
  }
}

TEST_SUITE("recognition.certs") {
  TEST_CASE("b_maps_aplus certificate") {
    PlaneBackend be;
    Real e1 = exp(Real(1));
    PlaneIsometry a{e1, 0, 0, 1 / e1};
    Representation<PlaneBackend> rep(be, a, PlaneIsometry{1, 1, 0, 1});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{10000};
    CertOutcome ok = eng.b_maps_aplus_cert(a, {1, 1, 0, 1}, budget);
    CHECK(ok.succeeded);
    Budget small{200};
    CertOutcome stuck = eng.b_maps_aplus_cert(a, {0, -1, 1, 0}, small);
    CHECK(!stuck.succeeded);
    Budget zero{0};
    CertOutcome none = eng.b_maps_aplus_cert(a, {1, 1, 0, 1}, zero);
    CHECK(!none.succeeded);
  }

  TEST_CASE("endpoints_distinct certificate") {
    PlaneBackend be;
    Representation<PlaneBackend> rep(be, PlaneIsometry{2, 0, 0, Real("0.5")},
                                     PlaneIsometry{1, 1, 0, 1});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    PlanePoint base{0, 1};
    Budget b1{1000};
    CertOutcome distinct = eng.endpoints_distinct_cert(base, {false, 0}, base, {true, 0}, b1);
    CHECK(distinct.succeeded);
    CHECK(b1.used == 1);  // certified at n = N already
    Budget b2{50};
    CertOutcome same = eng.endpoints_distinct_cert(base, {true, 0}, {1, 1}, {true, 0}, b2);
    CHECK(!same.succeeded);

    auto tree = identity_rep();
    RecognitionEngine<CayleyBackend> teng(tree, Constants::make(tree.params()));
    Budget b3{100};
    CertOutcome tdist = teng.endpoints_distinct_cert({Word()}, CayleyEnd{Word(), Word("a")},
                                                     {Word()}, CayleyEnd{Word(), Word("ab")}, b3);
    CHECK(tdist.succeeded);
  }

  TEST_CASE("find_small_or_sink on the tree") {
    auto rep = identity_rep();
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(rep.params()));
    Budget budget{1000};
    SmallOrSink r = eng.find_small_or_sink(base_edge().edge, Real(0), budget);
    REQUIRE(r.kind == SmallOrSink::sink);
    Vertex expected(slope_infinity(), slope_zero(), Slope{-1, 1});
    Vertex alt(slope_infinity(), slope_zero(), Slope{1, 1});
    CHECK((*r.sink_vertex == expected || *r.sink_vertex == alt));
    CHECK(static_cast<int>(r.trail.size()) <= 2);
  }

  TEST_CASE("sink is unique across restarts") {
    auto rep = identity_rep();
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(rep.params()));
    Budget budget{100000};
    SmallOrSink base_run = eng.find_small_or_sink(base_edge().edge, Real(0), budget);
    REQUIRE(base_run.kind == SmallOrSink::sink);
    SplitMix64 rng(51);
    for (int i = 0; i < 10; ++i) {
      // A deterministic far edge: walk the neighbor family a few times.
      Slope x = slope_infinity(), y = slope_zero();
      for (int step = 0; step < 6; ++step) {
        long long n = rng.uniform_int(-4, 4);
        Slope next = neighbors_of(x, y, n == 0 ? 1 : n);
        y = x;
        x = next;
      }
      SmallOrSink r = eng.find_small_or_sink(Edge(x, y), Real(0), budget);
      REQUIRE(r.kind == SmallOrSink::sink);
      CHECK(*r.sink_vertex == *base_run.sink_vertex);
    }
    CHECK(eng.fork_violations == 0);
  }

  TEST_CASE("find_small_or_sink immediate small region and budget") {
    PlaneBackend be;
    // B elliptic: the slope-0 region has zero length.
    Representation<PlaneBackend> rep(be, PlaneIsometry{2, 0, 0, Real("0.5")},
                                     PlaneIsometry{0, -1, 1, 0});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{100};
    SmallOrSink r = eng.find_small_or_sink(base_edge().edge, eng.constants.C_big, budget);
    REQUIRE(r.kind == SmallOrSink::small_region);
    CHECK(r.region == slope_zero());
    CHECK(r.edge == base_edge().edge);

    auto tree = identity_rep();
    RecognitionEngine<CayleyBackend> teng(tree, Constants::make(tree.params()));
    Budget one{1};
    SmallOrSink far = teng.find_small_or_sink(Edge(Slope{8, 3}, Slope{5, 2}), Real(0), one);
    CHECK(far.kind == SmallOrSink::budget);
  }
}

TEST_SUITE("recognition.certify") {
  TEST_CASE("cayley identity representation is certified via a sink") {
    auto rep = identity_rep();
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(rep.params()));
    Budget budget{100000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::certified_bowditch);
    REQUIRE(v.sink.has_value());
    CHECK(v.C == 0);
    CHECK(v.fork_violations == 0);
    CHECK(v.product_violations == 0);
    for (const Real& l : v.sink->lengths) CHECK(l > 0);
  }

  TEST_CASE("degenerate cayley representation is rejected") {
    CayleyBackend be;
    Representation<CayleyBackend> rep(be, {Word("a"), Word(), Word("a")},
                                      {Word("a"), Word(), Word()});
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(be.params));
    Budget budget{1000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::not_bowditch);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == WitnessKind::non_hyperbolic_primitive);
  }

  TEST_CASE("parabolic generator witness") {
    PlaneBackend be;
    Representation<PlaneBackend> rep(be, PlaneIsometry{1, 1, 0, 1},
                                     PlaneIsometry{2, 0, 0, Real("0.5")});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{1000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::not_bowditch);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == WitnessKind::non_hyperbolic_primitive);
    CHECK(v.witness->region == slope_infinity());
  }

  TEST_CASE("reducible witness for a shared fixed point") {
    PlaneBackend be;
    Representation<PlaneBackend> rep(be, PlaneIsometry{2, 0, 0, Real("0.5")},
                                     PlaneIsometry{2, 1, 0, Real("0.5")});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{1000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::not_bowditch);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == WitnessKind::reducible);
    CHECK(v.witness->boundary_point == "inf");
  }

  TEST_CASE("endpoint coincidence reachable in explore") {
    PlaneBackend be;
    Representation<PlaneBackend> rep(be, PlaneIsometry{2, 0, 0, Real("0.5")},
                                     PlaneIsometry{0, 1, -1, 3});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{100000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::not_bowditch);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == WitnessKind::endpoint_coincidence);
  }

  TEST_CASE("modular torus heuristic level set matches the oracle scan") {
    auto rep = modular_torus();
    Constants c5 = Constants::make(rep.params(), Real(5));
    CHECK(!c5.certified);
    RecognitionEngine<PlaneBackend> eng(rep, c5);
    Budget budget{1000000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::heuristic_bowditch);
    REQUIRE(v.level_set.has_value());
    auto rep2 = modular_torus();
    ScanReport scan = bq_scan(rep2, 14, Real(5));
    REQUIRE(scan.sublevel.size() == v.level_set->entries.size());
    std::set<Slope> from_scan, from_cert;
    for (const ScanEntry& e : scan.sublevel) from_scan.insert(e.slope);
    for (const LevelSetEntry& e : v.level_set->entries) from_cert.insert(e.region);
    CHECK(from_scan == from_cert);
  }

  TEST_CASE("certify is deterministic") {
    auto rep1 = modular_torus();
    auto rep2 = modular_torus();
    Constants c = Constants::make(rep1.params(), Real(8));
    RecognitionEngine<PlaneBackend> e1(rep1, c), e2(rep2, c);
    Budget b1{500000}, b2{500000};
    CHECK(verdict_json(e1.certify(b1)).dump() == verdict_json(e2.certify(b2)).dump());
  }

  TEST_CASE("inconclusive on a tiny budget") {
    auto rep = modular_torus();
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(rep.params(), Real(5)));
    Budget budget{3};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::inconclusive);
    REQUIRE(v.budget_report.has_value());
  }
}

TEST_SUITE("recognition.tree") {
  TEST_CASE("empty tree at level zero on the cayley identity") {
    auto rep = identity_rep();
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(rep.params()));
    Budget budget{10000};
    TreeResult t = eng.tree_T(Real(0), budget);
    CHECK(t.kind == TreeResult::finite);
    CHECK(t.tree.edges.empty());
    CHECK(t.level_set.empty());
  }

  TEST_CASE("parabolic primitive gives infinite evidence") {
    PlaneBackend be;
    // A parabolic, B hyperbolic with disjoint fixed points.
    Representation<PlaneBackend> rep(be, PlaneIsometry{1, 1, 0, 1}, PlaneIsometry{2, 1, 1, 1});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{10000};
    TreeResult t = eng.tree_T(Real(20), budget);
    CHECK(t.kind == TreeResult::infinite_evidence);
  }

  TEST_CASE("modular torus tree at K = 5 collects the level set and its arcs") {
    auto rep = modular_torus();
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(rep.params(), Real(5), Real(5)));
    Budget budget{1000000};
    TreeResult t = eng.tree_T(Real(5), budget);
    REQUIRE(t.kind == TreeResult::finite);
    CHECK(t.level_set.size() == 6);
    CHECK(!t.tree.edges.empty());
    // Every edge of the tree touches a level-set region.
    std::set<Slope> ls;
    for (auto& [s, l] : t.level_set) ls.insert(s);
    for (const Edge& e : t.tree.edges) CHECK((ls.count(e.x) || ls.count(e.y)));
  }

  TEST_CASE("arc bounds follow the displayed formulas") {
    auto rep = modular_torus();
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(rep.params(), Real(5)));
    ArcJ arc = eng.arc_J(Real(5), slope_infinity());
    CHECK(!arc.whole_boundary);
    REQUIRE((!arc.plus_infinite && !arc.minus_infinite));
    GrowthConstants gp = eng.growth_constants(slope_infinity(), slope_zero(), +1);
    GrowthConstants gm = eng.growth_constants(slope_infinity(), slope_zero(), -1);
    Real lx = rep.region_length(slope_infinity());
    CHECK(arc.n_plus == static_cast<long long>(floor(std::max(gp.N, (5 + gp.k) / lx))));
    CHECK(arc.n_minus == static_cast<long long>(floor(std::max(gm.N, (5 + gm.k) / lx))));
    CHECK(static_cast<long long>(arc.edges.size()) == arc.n_plus + arc.n_minus + 1);
  }

  TEST_CASE("arc markers") {
    PlaneBackend be;
    Representation<PlaneBackend> rep(be, PlaneIsometry{1, 1, 0, 1}, PlaneIsometry{2, 1, 1, 1});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    ArcJ whole = eng.arc_J(Real(10), slope_infinity());
    CHECK(whole.whole_boundary);
    Representation<PlaneBackend> rep2(be, PlaneIsometry{2, 0, 0, Real("0.5")},
                                      PlaneIsometry{0, 1, -1, 3});
    RecognitionEngine<PlaneBackend> eng2(rep2, Constants::make(be.params));
    ArcJ half = eng2.arc_J(Real(10), slope_infinity());
    CHECK((half.plus_infinite || half.minus_infinite));
    CHECK(!half.whole_boundary);
  }
}

TEST_SUITE("recognition.explore") {
  TEST_CASE("explore rejects an elliptic region directly") {
    PlaneBackend be;
    Representation<PlaneBackend> rep(be, PlaneIsometry{2, 0, 0, Real("0.5")},
                                     PlaneIsometry{0, -1, 1, 0});
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{1000};
    ExploreResult r = eng.explore_small_regions(base_edge().edge, slope_zero(),
                                                eng.constants.C_big, budget);
    REQUIRE(r.kind == ExploreResult::witness);
    CHECK(r.w->kind == WitnessKind::non_hyperbolic_primitive);
    CHECK(r.w->region == slope_zero());
  }

  TEST_CASE("explore budget exhaustion reports a frontier") {
    auto rep = modular_torus();
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(rep.params(), Real(5)));
    Budget tiny{2};
    ExploreResult r = eng.explore_small_regions(base_edge().edge, slope_infinity(), Real(5), tiny);
    CHECK(r.kind == ExploreResult::budget);
    CHECK(!r.frontier.empty());
  }

  TEST_CASE("space3 backend certifies the embedded modular torus") {
    Space3Backend be;
    Space3Isometry a{Cplx(1), Cplx(1), Cplx(1), Cplx(2)};
    Space3Isometry b{Cplx(1), Cplx(-1), Cplx(-1), Cplx(2)};
    Representation<Space3Backend> rep(be, a, b);
    Constants c5 = Constants::make(be.params, Real(5));
    RecognitionEngine<Space3Backend> eng(rep, c5);
    Budget budget{1000000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::heuristic_bowditch);
    REQUIRE(v.level_set.has_value());
    CHECK(v.level_set->entries.size() == 6);
  }
}

TEST_SUITE("recognition.endtoend") {
  TEST_CASE("certified level set at C = 50 delta equals an exhaustive scan") {
    // The scan window L = 60 strictly covers the sublevel set: every class
    // with |gamma| > 60 already exceeds 50 delta in length on this
    // representation, which the test verifies on the scan itself.
    auto rep = modular_torus();
    Real C = 50 * rep.params().delta;
    Constants constants = Constants::make(rep.params(), C);
    RecognitionEngine<PlaneBackend> eng(rep, constants);
    Budget budget{10000000};
    Verdict v = eng.certify(budget);
    REQUIRE(v.level_set.has_value());
    auto rep2 = modular_torus();
    ScanReport scan = bq_scan(rep2, 60, C);
    Real min_ratio = Real(1e9);
    for (const ScanEntry& e : scan.sublevel)
      min_ratio = std::min(min_ratio, C / Real(e.slope.size()));
    CHECK(min_ratio * 60 > C);  // window wide enough
    std::set<Slope> cert, oracle;
    for (const LevelSetEntry& e : v.level_set->entries) cert.insert(e.region);
    for (const ScanEntry& e : scan.sublevel) oracle.insert(e.slope);
    CHECK(cert == oracle);
    CHECK(cert.size() > 100);
  }

  TEST_CASE("plane sink certificate at the full constant") {
    // Two hyperbolics of translation length 400 > 432 delta with disjoint
    // axes: no small regions anywhere, so the walk must end in a sink.
    PlaneBackend be;
    Real lam = exp(Real(200));
    PlaneIsometry a{lam, 0, 0, 1 / lam};
    Real t = Real(200);
    PlaneIsometry b{cosh(t), sinh(t), sinh(t), cosh(t)};
    Representation<PlaneBackend> rep(be, a, b);
    Constants constants = Constants::make(be.params);
    CHECK(constants.certified);
    RecognitionEngine<PlaneBackend> eng(rep, constants);
    Budget budget{100000};
    Verdict v = eng.certify(budget);
    CHECK(v.kind == VerdictKind::certified_bowditch);
    REQUIRE(v.sink.has_value());
    CHECK(v.fork_violations == 0);
    CHECK(v.product_violations == 0);
    // Round-trip the certificate through the verifier.
    Json report = verdict_json(v);
    VerificationResult res = verify_certificate(rep, report);
    CHECK(res.ok);
  }
}

TEST_SUITE("recognition.descent") {
  TEST_CASE("plane descent harvests short basis elements") {
    PlaneBackend be;
    Real e1 = exp(Real(1));
    PlaneIsometry a{e1 * e1, 0, 0, 1 / (e1 * e1)};
    Real lam = exp(Real(1) / -2);
    PlaneIsometry b{lam, 1, 0, 1 / lam};
    Representation<PlaneBackend> rep(be, a, b);
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(be.params));
    Budget budget{50};
    DescentResult d = eng.reducible_descent(budget);
    CHECK(!d.harvested.empty());
    const Real delta = be.params.delta;
    for (auto& [w, l] : d.harvested) CHECK(l <= 329 * delta);
    for (const DescentStep& s : d.trail)
      CHECK(s.lw <= abs(s.lu - s.lv) + 120 * delta + kTol);
  }

  TEST_CASE("tree descent with both images powers of a finds trivial elements") {
    CayleyBackend be;
    Representation<CayleyBackend> rep(be, {Word("aa"), Word("AAA"), Word("aa")},
                                      {Word("aa"), Word("AAA"), Word("AAA")});
    RecognitionEngine<CayleyBackend> eng(rep, Constants::make(be.params));
    Budget budget{100};
    DescentResult d = eng.reducible_descent(budget);
    REQUIRE(!d.harvested.empty());
    bool found_zero = false;
    for (auto& [w, l] : d.harvested)
      if (l == 0) found_zero = true;
    CHECK(found_zero);
  }

  TEST_CASE("descent rejects irreducible input") {
    auto rep = modular_torus();
    RecognitionEngine<PlaneBackend> eng(rep, Constants::make(rep.params()));
    Budget budget{100};
    CHECK_THROWS_AS(eng.reducible_descent(budget), std::invalid_argument);
  }
}
