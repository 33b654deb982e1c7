#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bowditch/farey.hpp"
#include "bowditch/representation.hpp"

namespace bowditch {

// Run constants. Certified mode needs C_big >= 432 delta and
// K_threshold >= C_big + delta; anything smaller downgrades every positive
// verdict to heuristic.
struct Constants {
  Real delta;
  Real C_big;
  Real K_threshold;
  bool certified;

  static Constants make(const SpaceParams& p, std::optional<Real> c_override = std::nullopt,
                        std::optional<Real> k_override = std::nullopt) {
    Constants c;
    c.delta = p.delta;
    c.C_big = c_override ? *c_override : Real(432) * p.delta;
    c.K_threshold = k_override ? *k_override : c.C_big + p.delta;
    c.certified = c.C_big >= Real(432) * p.delta && c.K_threshold >= c.C_big + p.delta;
    return c;
  }
};

struct GrowthConstants {
  Real N;
  Real k;
  int side;  // +1 or -1
};

struct Budget {
  long long limit = 1;
  long long used = 0;
  bool take(long long n = 1) {
    used += n;
    return used <= limit;
  }
  bool exhausted() const { return used > limit; }
};

enum class VerdictKind { certified_bowditch, heuristic_bowditch, not_bowditch, inconclusive };

inline std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::certified_bowditch: return "certified-bowditch";
    case VerdictKind::heuristic_bowditch: return "heuristic-bowditch";
    case VerdictKind::not_bowditch: return "not-bowditch";
    case VerdictKind::inconclusive: return "inconclusive";
  }
  return "?";
}

enum class WitnessKind { non_hyperbolic_primitive, reducible, endpoint_coincidence };

struct Witness {
  WitnessKind kind = WitnessKind::non_hyperbolic_primitive;
  Slope region = slope_infinity();   // offending primitive class
  Slope partner = slope_zero();      // basis partner for coincidences
  int side = 0;                      // +1: B(A+)=A-, -1: B(A-)=A+
  std::string boundary_point;        // shared/coincident point, model form
  std::string pair_name;             // which fixed-point pair (reducible)
};

struct SinkCertificate {
  Vertex v;
  std::array<Real, 3> lengths;  // aligned with v.r
};

struct LevelSetEntry {
  Slope region;
  Real length;
  Slope partner;
  Real N_plus, k_plus, N_minus, k_minus;
  long long n_plus, n_minus;  // enumerated arc bounds
};

struct FiniteLevelSetCertificate {
  std::vector<LevelSetEntry> entries;
};

struct BudgetReport {
  std::string stage;
  std::vector<Edge> trail;
  std::vector<Slope> frontier;
};

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::optional<Witness> witness;
  std::optional<SinkCertificate> sink;
  std::optional<FiniteLevelSetCertificate> level_set;
  std::optional<BudgetReport> budget_report;
  Real delta = 0, C = 0, K = 0;
  bool certified_mode = false;
  long long budget_consumed = 0;
  long long fork_violations = 0;
  long long product_violations = 0;
};

// Outcome of the orientation walk.
struct SmallOrSink {
  enum Kind { small_region, sink, budget } kind;
  Edge edge{slope_infinity(), slope_zero()};
  Slope region = slope_infinity();
  std::optional<Vertex> sink_vertex;
  std::vector<Edge> trail;
};

struct ExploreResult {
  enum Kind { explored, witness, budget } kind;
  std::vector<LevelSetEntry> entries;
  std::optional<Witness> w;
  std::vector<Slope> frontier;
};

// Arc of boundary edges J(K, X) around a region, or the infinite markers of
// the non-hyperbolic / coincidence cases.
struct ArcJ {
  bool whole_boundary = false;
  bool plus_infinite = false;
  bool minus_infinite = false;
  std::vector<Edge> edges;
  long long n_plus = 0, n_minus = 0;
};

struct TreeResult {
  enum Kind { finite, infinite_evidence, budget } kind;
  Subtree tree;
  std::vector<std::pair<Slope, Real>> level_set;
  std::string evidence;
};

struct CertOutcome {
  bool succeeded = false;  // certificate obtained before the budget ran out
  long long steps = 0;
  Real n_reached = 0;
};

struct DescentStep {
  Word u, v;
  Real lu, lv, lw;
};

struct DescentResult {
  std::vector<std::pair<Word, Real>> harvested;
  std::vector<DescentStep> trail;
  bool budget_exceeded = false;
};

template <class B>
class RecognitionEngine {
 public:
  using Iso = typename B::Isometry;
  using Bd = typename B::Boundary;
  using Pt = typename B::Point;

  Representation<B>& rep;
  Constants constants;
  long long fork_violations = 0;
  long long product_violations = 0;

  RecognitionEngine(Representation<B>& r, Constants c) : rep(r), constants(c) {}

  const B& backend() const { return rep.backend(); }
  Real delta() const { return constants.delta; }

  // Induced orientation: arrow from the longer opposite region to the
  // shorter; near-ties break toward the lexicographically smaller slope.
  OrientedEdge orientation(const Edge& e) {
    auto [zs, zd] = completions(e);
    Real ls = rep.region_length(zs);
    Real ld = rep.region_length(zd);
    Real mx = std::max(ls, ld);
    Slope target;
    if (abs(ls - ld) <= Real("1e-12") * mx)
      target = zs < zd ? zs : zd;
    else
      target = ls < ld ? zs : zd;
    return OrientedEdge(e, Vertex(e.x, e.y, target));
  }

  // Constants of the linear growth l_S(B A^n) >= n l_S(A) - k for n >= N.
  GrowthConstants growth_constants_for(const Iso& a, const Iso& b, int side) {
    const B& be = backend();
    Real la = be.stable_norm(a);
    if (!be.is_hyperbolic(a)) throw std::domain_error("growth_constants: A not hyperbolic");
    auto [att, repel] = be.fixed_points(a);
    Bd b_att = be.apply_boundary(b, att);
    if (be.boundary_eq(b_att, repel))
      throw std::domain_error("growth_constants: B(A+) = A-, use coincidence_bound");
    Pt o = be.axis_basepoint(a);
    Pt po = be.project_to_geodesic(o, repel, b_att);
    Real d_bo = be.dist(be.apply(b, o), o);
    Real d_po = be.dist(po, o);
    GrowthConstants g;
    g.side = side;
    g.k = 3 * d_bo + 2 * d_po + 36 * delta();
    g.N = std::max(4 * d_bo + 3 * d_po + 51 * delta(), 2 * d_bo + 4 * d_po + 5 * delta()) / la;
    return g;
  }

  GrowthConstants growth_constants(const Region& x, const Region& y, int side) {
    const Iso& a = rep.region_image(x);
    const Iso& b = rep.region_image(y);
    if (side > 0) return growth_constants_for(a, b, +1);
    return growth_constants_for(backend().invert(a), b, -1);
  }

  // N beyond which l_S(A^n B) stays <= 30 delta when B(A+) = A-.
  Real coincidence_bound_for(const Iso& a, const Iso& b) {
    const B& be = backend();
    Real la = be.stable_norm(a);
    if (!be.is_hyperbolic(a)) throw std::domain_error("coincidence_bound: A not hyperbolic");
    Pt o = be.axis_basepoint(a);
    Real d_bo = be.dist(be.apply(b, o), o);
    return std::max(3 * d_bo + 18 * delta(), 5 * d_bo + 10 * delta()) / la;
  }

  Real coincidence_bound(const Region& x, const Region& y) {
    const B& be = backend();
    const Iso& a = rep.region_image(x);
    const Iso& b = rep.region_image(y);
    auto [att, repel] = be.fixed_points(a);
    if (!be.boundary_eq(be.apply_boundary(b, att), repel))
      throw std::domain_error("coincidence_bound: B(A+) != A-");
    return coincidence_bound_for(a, b);
  }

  // Semi-decision that B(A+) != A-: scans l_S(A^n B) from the coincidence
  // start index and certifies the negative on the first value above 30 delta.
  CertOutcome b_maps_aplus_cert(const Iso& a, const Iso& b, Budget& budget) {
    const B& be = backend();
    Real n_start = coincidence_bound_for(a, b);
    long long n = std::max<long long>(1, static_cast<long long>(ceil(n_start)));
    Iso m = be.compose(rep.power(a, n), b);
    const Real bound = 30 * delta();
    CertOutcome out;
    while (budget.take()) {
      ++out.steps;
      if (be.stable_norm(m) > bound) {
        out.succeeded = true;
        out.n_reached = Real(n);
        return out;
      }
      m = be.compose(a, m);
      ++n;
    }
    out.n_reached = Real(n);
    return out;
  }

  // Semi-decision that two rays have distinct endpoints: walk out from
  // n = N and certify on the first projection distance > 2 delta.
  CertOutcome endpoints_distinct_cert(const Pt& base1, const Bd& xi1, const Pt& base2,
                                      const Bd& xi2, Budget& budget) {
    const B& be = backend();
    Real d12 = be.dist(base1, base2);
    Real n = std::max(6 * delta(), d12) + d12 + delta();
    CertOutcome out;
    while (budget.take()) {
      ++out.steps;
      Pt x = be.point_on_ray(base1, xi1, n);
      Pt proj = be.project_to_ray(x, base2, xi2);
      if (be.dist(x, proj) > 2 * delta()) {
        out.succeeded = true;
        out.n_reached = n;
        return out;
      }
      n += 1;
    }
    out.n_reached = n;
    return out;
  }

  // Follows the induced orientation from e until it finds a region of length
  // <= C incident to the current edge, or a sink.
  SmallOrSink find_small_or_sink(Edge e, const Real& C, Budget& budget) {
    SmallOrSink out;
    while (true) {
      if (!budget.take()) {
        out.kind = SmallOrSink::budget;
        return out;
      }
      out.trail.push_back(e);
      if (rep.region_length(e.x) <= C) {
        out.kind = SmallOrSink::small_region;
        out.edge = e;
        out.region = e.x;
        return out;
      }
      if (rep.region_length(e.y) <= C) {
        out.kind = SmallOrSink::small_region;
        out.edge = e;
        out.region = e.y;
        return out;
      }
      auto [zs, zd] = completions(e);
      for (const Slope& r : {zs, zd}) {
        if (rep.region_length(r) <= C) {
          out.kind = SmallOrSink::small_region;
          out.edge = Edge(e.x, r);
          out.region = r;
          return out;
        }
      }
      // All four incident lengths exceed C here; in certified mode the
      // product inequality must hold on the edge.
      if (constants.certified) {
        Real lhs = std::max(rep.region_length(zs), rep.region_length(zd));
        if (lhs < rep.region_length(e.x) + rep.region_length(e.y) - C) ++product_violations;
      }
      OrientedEdge oe = orientation(e);
      Vertex v = oe.head;
      Slope zc = v.r[0] == e.x || v.r[0] == e.y ? (v.r[1] == e.x || v.r[1] == e.y ? v.r[2] : v.r[1]) : v.r[0];
      Edge e1(e.x, zc), e2(e.y, zc);
      std::vector<Edge> away;
      for (const Edge& cand : {e1, e2})
        if (!(orientation(cand).head == v)) away.push_back(cand);
      if (away.empty()) {
        out.kind = SmallOrSink::sink;
        out.sink_vertex = v;
        return out;
      }
      if (away.size() == 2) {
        // Two outgoing arrows cannot happen above 432 delta; heuristic runs
        // with a smaller C can hit this.
        ++fork_violations;
        // Deterministic steepest-descent pick: follow the edge whose far
        // opposite region is shorter, lexicographic tie-break.
        auto far_len = [&](const Edge& cand) {
          Vertex far = other_vertex(cand, v);
          Slope fr = far.r[0] == cand.x || far.r[0] == cand.y
                         ? (far.r[1] == cand.x || far.r[1] == cand.y ? far.r[2] : far.r[1])
                         : far.r[0];
          return rep.region_length(fr);
        };
        Real f0 = far_len(away[0]), f1 = far_len(away[1]);
        e = (f0 < f1 || (f0 == f1 && away[0] < away[1])) ? away[0] : away[1];
        continue;
      }
      e = away.front();
    }
  }

  bool region_hyperbolic(const Region& s) { return rep.region_hyperbolic(s); }

  // Chord-with-escalation endpoint test. Returns +1 for certified-distinct,
  // 0 for coincidence at working precision, -1 for budget exhaustion in the
  // escalation zone.
  int endpoint_distinct_status(const Bd& b_image, const Bd& target, const Iso& a_for_cert,
                               const Iso& b_iso, Budget& budget) {
    const B& be = backend();
    Real chord = be.boundary_chord(b_image, target);
    if (chord <= be.params.boundary_tolerance) return 0;
    if (chord <= 100 * be.params.boundary_tolerance) {
      CertOutcome c = b_maps_aplus_cert(a_for_cert, b_iso, budget);
      if (c.succeeded) return +1;
      return -1;
    }
    return +1;
  }

  // Recursive exploration of the sublevel set, run as an explicit FIFO queue
  // with a visited set keyed by slope.
  ExploreResult explore_small_regions(const Edge& e0, const Region& x0, const Real& C,
                                      Budget& budget) {
    ExploreResult out;
    std::deque<std::pair<Edge, Region>> queue;
    std::set<Slope> seen;
    queue.emplace_back(e0, x0);
    seen.insert(x0);
    while (!queue.empty()) {
      auto [e, x] = queue.front();
      queue.pop_front();
      if (!budget.take()) {
        out.kind = ExploreResult::budget;
        for (auto& q : queue) out.frontier.push_back(q.second);
        out.frontier.push_back(x);
        return out;
      }
      Real lx = rep.region_length(x);
      if (!region_hyperbolic(x)) {
        out.kind = ExploreResult::witness;
        out.w = Witness{WitnessKind::non_hyperbolic_primitive, x, slope_zero(), 0, "", ""};
        return out;
      }
      Region y = basis_partner(x);
      const Iso& a = rep.region_image(x);
      const Iso& b = rep.region_image(y);
      const B& be = backend();
      auto [att, repel] = be.fixed_points(a);
      Bd b_att = be.apply_boundary(b, att);
      Bd b_rep = be.apply_boundary(b, repel);
      int plus_status = endpoint_distinct_status(b_att, repel, a, b, budget);
      if (plus_status == 0) {
        out.kind = ExploreResult::witness;
        out.w = Witness{WitnessKind::endpoint_coincidence, x, y, +1, be.describe_boundary(repel), ""};
        return out;
      }
      int minus_status = plus_status == -1
                             ? +1
                             : endpoint_distinct_status(b_rep, att, be.invert(a), b, budget);
      if (minus_status == 0) {
        out.kind = ExploreResult::witness;
        out.w = Witness{WitnessKind::endpoint_coincidence, x, y, -1, be.describe_boundary(att), ""};
        return out;
      }
      if (plus_status == -1 || minus_status == -1) {
        out.kind = ExploreResult::budget;
        out.frontier.push_back(x);
        return out;
      }
      GrowthConstants gp = growth_constants_for(a, b, +1);
      GrowthConstants gm = growth_constants_for(be.invert(a), b, -1);
      Real np_real = std::max(gp.N, (C + gp.k) / lx);
      Real nm_real = std::max(gm.N, (C + gm.k) / lx);
      long long n_plus = static_cast<long long>(floor(np_real));
      long long n_minus = static_cast<long long>(floor(nm_real));
      auto [ua, ub] = exponent_sums(primitive_word(x));
      auto [wa, wb] = exponent_sums(primitive_word(y));
      for (long long n = -n_minus; n <= n_plus; ++n) {
        if (!budget.take()) {
          out.kind = ExploreResult::budget;
          for (auto& q : queue) out.frontier.push_back(q.second);
          out.frontier.push_back(x);
          return out;
        }
        Region yn = normalize_slope(n * ua + wa, n * ub + wb);
        Real ln = rep.region_length(yn);
        if (ln <= C && !seen.count(yn)) {
          seen.insert(yn);
          queue.emplace_back(Edge(x, yn), yn);
        }
      }
      out.entries.push_back({x, lx, y, gp.N, gp.k, gm.N, gm.k, n_plus, n_minus});
    }
    out.kind = ExploreResult::explored;
    std::sort(out.entries.begin(), out.entries.end(),
              [](const LevelSetEntry& a, const LevelSetEntry& b) { return a.region < b.region; });
    return out;
  }

  // Finite arc of boundary edges of X at level K, or the infinite markers.
  ArcJ arc_J(const Real& K, const Region& x) {
    ArcJ arc;
    if (!region_hyperbolic(x)) {
      arc.whole_boundary = true;
      return arc;
    }
    const B& be = backend();
    Region y = basis_partner(x);
    const Iso& a = rep.region_image(x);
    const Iso& b = rep.region_image(y);
    Real lx = rep.region_length(x);
    auto [att, repel] = be.fixed_points(a);
    auto [ua, ub] = exponent_sums(primitive_word(x));
    auto [wa, wb] = exponent_sums(primitive_word(y));
    if (be.boundary_eq(be.apply_boundary(b, att), repel)) {
      arc.plus_infinite = true;
    } else {
      GrowthConstants gp = growth_constants_for(a, b, +1);
      arc.n_plus = static_cast<long long>(floor(std::max(gp.N, (K + gp.k) / lx)));
    }
    if (be.boundary_eq(be.apply_boundary(b, repel), att)) {
      arc.minus_infinite = true;
    } else {
      GrowthConstants gm = growth_constants_for(be.invert(a), b, -1);
      arc.n_minus = static_cast<long long>(floor(std::max(gm.N, (K + gm.k) / lx)));
    }
    if (!arc.plus_infinite && !arc.minus_infinite) {
      for (long long n = -arc.n_minus; n <= arc.n_plus; ++n)
        arc.edges.emplace_back(x, normalize_slope(n * ua + wa, n * ub + wb));
    }
    return arc;
  }

  // T(K): union of the arcs over the discovered sublevel set.
  TreeResult tree_T(const Real& K, Budget& budget) {
    TreeResult out;
    SmallOrSink first = find_small_or_sink(base_edge().edge, K, budget);
    if (first.kind == SmallOrSink::budget) {
      out.kind = TreeResult::budget;
      out.evidence = "budget exhausted while searching for the sublevel set";
      return out;
    }
    if (first.kind == SmallOrSink::sink) {
      out.kind = TreeResult::finite;  // empty sublevel set, empty tree
      return out;
    }
    ExploreResult ex = explore_small_regions(first.edge, first.region, K, budget);
    if (ex.kind == ExploreResult::budget) {
      out.kind = TreeResult::budget;
      out.evidence = "budget exhausted during sublevel exploration";
      return out;
    }
    if (ex.kind == ExploreResult::witness) {
      out.kind = TreeResult::infinite_evidence;
      out.evidence = ex.w->kind == WitnessKind::non_hyperbolic_primitive
                         ? "non-hyperbolic primitive: whole boundary of " + to_string(ex.w->region)
                         : "endpoint coincidence at " + to_string(ex.w->region) +
                               ": half-infinite arc";
      return out;
    }
    out.kind = TreeResult::finite;
    for (const LevelSetEntry& entry : ex.entries) {
      out.level_set.emplace_back(entry.region, entry.length);
      ArcJ arc = arc_J(K, entry.region);
      for (const Edge& e : arc.edges) out.tree.edges.insert(e);
    }
    return out;
  }

  // The main recognition procedure.
  Verdict certify(Budget& budget) {
    Verdict v;
    v.delta = delta();
    v.C = constants.C_big;
    v.K = constants.K_threshold;
    v.certified_mode = constants.certified;
    const B& be = backend();
    auto finish = [&](Verdict& out) {
      out.budget_consumed = budget.used;
      out.fork_violations = fork_violations;
      out.product_violations = product_violations;
      return out;
    };

    // Step 1: generator images must act hyperbolically.
    for (const Region& s : {slope_infinity(), slope_zero()}) {
      if (!region_hyperbolic(s)) {
        v.kind = VerdictKind::not_bowditch;
        v.witness = Witness{WitnessKind::non_hyperbolic_primitive, s, slope_zero(), 0, "", ""};
        return finish(v);
      }
    }

    // Step 2: irreducibility via the fixed-point sets of the generators.
    {
      const Iso& a = rep.region_image(slope_infinity());
      const Iso& b = rep.region_image(slope_zero());
      auto [ap, am] = be.fixed_points(a);
      auto [bp, bm] = be.fixed_points(b);
      struct PairCase {
        const Bd* x;
        const Bd* y;
        const char* name;
      };
      const PairCase cases[] = {{&ap, &bp, "A+ = B+"},
                                {&ap, &bm, "A+ = B-"},
                                {&am, &bp, "A- = B+"},
                                {&am, &bm, "A- = B-"}};
      for (const auto& pc : cases) {
        Real chord = be.boundary_chord(*pc.x, *pc.y);
        if (chord <= be.params.boundary_tolerance) {
          v.kind = VerdictKind::not_bowditch;
          Witness w;
          w.kind = WitnessKind::reducible;
          w.boundary_point = be.describe_boundary(*pc.x);
          w.pair_name = pc.name;
          v.witness = w;
          return finish(v);
        }
        if (chord <= 100 * be.params.boundary_tolerance) {
          CertOutcome c = endpoints_distinct_cert(be.axis_basepoint(a), *pc.x,
                                                  be.axis_basepoint(b), *pc.y, budget);
          if (!c.succeeded) {
            v.kind = VerdictKind::inconclusive;
            v.budget_report = BudgetReport{std::string("irreducibility escalation: ") + pc.name, {}, {}};
            return finish(v);
          }
        }
      }
    }

    // Step 3: walk the orientation.
    SmallOrSink walk = find_small_or_sink(base_edge().edge, constants.C_big, budget);
    if (walk.kind == SmallOrSink::budget) {
      v.kind = VerdictKind::inconclusive;
      v.budget_report = BudgetReport{"find_small_or_sink", walk.trail, {}};
      return finish(v);
    }
    if (walk.kind == SmallOrSink::sink) {
      SinkCertificate cert{*walk.sink_vertex, {}};
      for (int i = 0; i < 3; ++i) cert.lengths[i] = rep.region_length(cert.v.r[i]);
      v.sink = cert;
      v.kind = constants.certified ? VerdictKind::certified_bowditch
                                   : VerdictKind::heuristic_bowditch;
      return finish(v);
    }

    // Step 4: explore the sublevel set.
    ExploreResult ex = explore_small_regions(walk.edge, walk.region, constants.C_big, budget);
    if (ex.kind == ExploreResult::budget) {
      v.kind = VerdictKind::inconclusive;
      v.budget_report = BudgetReport{"explore_small_regions", {}, ex.frontier};
      return finish(v);
    }
    if (ex.kind == ExploreResult::witness) {
      v.kind = VerdictKind::not_bowditch;
      v.witness = ex.w;
      return finish(v);
    }
    v.level_set = FiniteLevelSetCertificate{ex.entries};
    v.kind =
        constants.certified ? VerdictKind::certified_bowditch : VerdictKind::heuristic_bowditch;
    return finish(v);
  }

  // Basis descent along a reducible representation, harvesting primitive
  // words of stable norm <= 329 delta. Test generator, not used by certify.
  DescentResult reducible_descent(Budget& budget) {
    const B& be = backend();
    DescentResult out;
    const Iso& a = rep.gen_a();
    const Iso& b = rep.gen_b();
    if (!be.is_hyperbolic(a) || !be.is_hyperbolic(b))
      throw std::invalid_argument("reducible_descent: generators must act hyperbolically");
    auto [ap, am] = be.fixed_points(a);
    auto [bp, bm] = be.fixed_points(b);
    Word u("a"), v0("b");
    // Normalize so that the invariant U+ = V- holds.
    if (be.boundary_eq(ap, bm)) {
      // nothing
    } else if (be.boundary_eq(ap, bp)) {
      v0 = inverse(v0);
    } else if (be.boundary_eq(am, bp)) {
      u = inverse(u);
      v0 = inverse(v0);
    } else if (be.boundary_eq(am, bm)) {
      u = inverse(u);
    } else {
      throw std::invalid_argument("reducible_descent: representation is not reducible");
    }
    Word v = v0;
    const Real harvest_bound = 329 * delta();
    const Real gap = 88 * delta();
    while (budget.take()) {
      Iso iu = rep.image_of_word(u);
      Iso iv = rep.image_of_word(v);
      Real lu = be.stable_norm(iu);
      Real lv = be.stable_norm(iv);
      Word w = concat(u, v);
      Iso iw = detail::mul_raw(iu, iv);
      Real lw = be.stable_norm(iw);
      out.trail.push_back({u, v, lu, lv, lw});
      if (lw <= harvest_bound) out.harvested.emplace_back(w, lw);
      if (!be.is_hyperbolic(iw)) return out;  // descent bottomed out
      bool product_attracts_shared;
      if (lu > lv + gap) {
        product_attracts_shared = true;  // (UV)+ = U+ = V-
      } else if (lu < lv - gap) {
        product_attracts_shared = false;  // (UV)- = U+ = V-
      } else {
        auto [wp, wm] = be.fixed_points(iw);
        auto [up, um] = be.fixed_points(iu);
        (void)um;
        (void)wm;
        product_attracts_shared = be.boundary_eq(wp, up);
      }
      if (product_attracts_shared)
        u = w;  // basis {uv, v}
      else
        v = w;  // basis {u, uv}
    }
    out.budget_exceeded = true;
    return out;
  }
};

}  // namespace bowditch
