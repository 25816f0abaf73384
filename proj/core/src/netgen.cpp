#include "rdslab/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "rdslab/errors.hpp"

namespace rdslab {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Mutable weighted adjacency used while the KOSKK process evolves.
class EvolvingGraph {
 public:
  explicit EvolvingGraph(std::size_t n) : nb_(n), w_(n) {}

  std::size_t size() const { return nb_.size(); }
  std::size_t degree(NodeId v) const { return nb_[v].size(); }
  const std::vector<NodeId>& neighbors(NodeId v) const { return nb_[v]; }
  const std::vector<double>& weights(NodeId v) const { return w_[v]; }

  std::ptrdiff_t find(NodeId u, NodeId v) const {
    const auto& list = nb_[u];
    auto it = std::find(list.begin(), list.end(), v);
    return it == list.end() ? -1 : it - list.begin();
  }

  void add(NodeId u, NodeId v, double weight) {
    nb_[u].push_back(v);
    w_[u].push_back(weight);
    nb_[v].push_back(u);
    w_[v].push_back(weight);
  }

  // Adds `amount` to the weight of u-v given u's slot for v.
  void reinforce(NodeId u, std::size_t slot, double amount) {
    const NodeId v = nb_[u][slot];
    w_[u][slot] += amount;
    w_[v][static_cast<std::size_t>(find(v, u))] += amount;
  }

  void strip(NodeId v) {
    for (NodeId u : nb_[v]) {
      const auto slot = static_cast<std::size_t>(find(u, v));
      nb_[u][slot] = nb_[u].back();
      nb_[u].pop_back();
      w_[u][slot] = w_[u].back();
      w_[u].pop_back();
    }
    nb_[v].clear();
    w_[v].clear();
  }

  Network freeze() const {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < nb_.size(); ++u)
      for (std::size_t k = 0; k < nb_[u].size(); ++k)
        if (nb_[u][k] > u) edges.push_back({u, nb_[u][k], w_[u][k]});
    return Network(nb_.size(), edges, std::vector<Group>(nb_.size(), Group::B), true);
  }

 private:
  std::vector<std::vector<NodeId>> nb_;
  std::vector<std::vector<double>> w_;
};

// Index into `weights` drawn proportionally, skipping `excluded` (if any).
std::size_t weighted_pick(const std::vector<double>& weights, double total, Rng& rng,
                          std::ptrdiff_t excluded = -1) {
  double r = uniform01(rng) * total;
  std::size_t last_valid = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (static_cast<std::ptrdiff_t>(k) == excluded) continue;
    last_valid = k;
    r -= weights[k];
    if (r < 0.0) return k;
  }
  return last_valid;
}

void evolve(EvolvingGraph& g, const KoskkParams& p, Rng& rng) {
  const std::size_t n = g.size();
  for (std::uint64_t step = 0; step < p.steps; ++step) {
    const auto i = static_cast<NodeId>(uniform_index(rng, n));

    // Local attachment.
    if (g.degree(i) > 0) {
      const auto& wi = g.weights(i);
      const double strength_i = std::accumulate(wi.begin(), wi.end(), 0.0);
      const std::size_t slot_ij = weighted_pick(wi, strength_i, rng);
      const NodeId j = g.neighbors(i)[slot_ij];
      if (g.degree(j) > 1) {
        const auto slot_ji = g.find(j, i);
        const auto& wj = g.weights(j);
        const double strength_j = std::accumulate(wj.begin(), wj.end(), 0.0) - wj[static_cast<std::size_t>(slot_ji)];
        const std::size_t slot_jk = weighted_pick(wj, strength_j, rng, slot_ji);
        const NodeId k = g.neighbors(j)[slot_jk];
        const auto slot_ik = g.find(i, k);
        if (slot_ik >= 0) {
          g.reinforce(i, static_cast<std::size_t>(slot_ik), p.delta);
        } else if (bernoulli(rng, p.p_delta)) {
          g.add(i, k, p.w0);
        }
        g.reinforce(i, slot_ij, p.delta);
        g.reinforce(j, slot_jk, p.delta);
      }
    }

    // Global attachment.
    if (g.degree(i) == 0 || bernoulli(rng, p.p_r)) {
      auto l = static_cast<NodeId>(uniform_index(rng, n - 1));
      if (l >= i) ++l;
      if (g.find(i, l) < 0) g.add(i, l, p.w0);
    }

    // Node deletion.
    const auto victim = static_cast<NodeId>(uniform_index(rng, n));
    if (bernoulli(rng, p.p_d)) g.strip(victim);
  }
}

// Links one random member of every non-giant component to a random giant node.
void attach_stragglers(EvolvingGraph& g, double w0, Rng& rng) {
  const std::size_t n = g.size();
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnset);
  std::vector<std::vector<NodeId>> members;
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    members.emplace_back();
    label[s] = members.size() - 1;
    frontier.push(s);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      members.back().push_back(v);
      for (NodeId u : g.neighbors(v)) {
        if (label[u] == kUnset) {
          label[u] = label[s];
          frontier.push(u);
        }
      }
    }
  }
  if (members.size() <= 1) return;
  std::size_t giant = 0;
  for (std::size_t c = 1; c < members.size(); ++c)
    if (members[c].size() > members[giant].size()) giant = c;
  const std::vector<NodeId> anchors = members[giant];
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (c == giant) continue;
    const NodeId from = members[c][uniform_index(rng, members[c].size())];
    const NodeId to = anchors[uniform_index(rng, anchors.size())];
    g.add(from, to, w0);
  }
}

double mean_degree(const Network& net) {
  return 2.0 * static_cast<double>(net.edge_count()) / static_cast<double>(net.node_count());
}

}  // namespace

void KoskkParams::validate() const {
  if (n < 2) throw InvalidArgument("KOSKK model needs n >= 2");
  if (!(w0 > 0.0)) throw InvalidArgument("w0 must be positive");
  if (!is_probability(p_r) || !is_probability(p_d) || !is_probability(p_delta))
    throw InvalidArgument("p_r, p_d and p_delta must lie in [0, 1]");
  if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
  if (steps < 1) throw InvalidArgument("steps must be at least 1");
}

std::uint64_t KoskkParams::scaled_steps(std::size_t n) noexcept {
  return static_cast<std::uint64_t>(n) * 10'000ULL;
}

Network koskk_generate(const KoskkParams& params, Rng& rng) {
  params.validate();
  EvolvingGraph g(params.n);
  evolve(g, params, rng);
  attach_stragglers(g, params.w0, rng);
  return g.freeze();
}

double calibrate_p_delta(const KoskkParams& params, Rng& rng, const CalibrationOptions& options) {
  KoskkParams pilot = params;
  pilot.p_delta = 0.0;
  pilot.validate();
  if (!(params.target_mean_degree > 0.0)) throw InvalidArgument("target_mean_degree must be positive");
  if (options.pilots < 1) throw InvalidArgument("calibration needs at least one pilot");
  pilot.n = std::min(params.n, std::max<std::size_t>(options.pilot_nodes, 2));
  pilot.steps = options.pilot_steps > 0
                    ? options.pilot_steps
                    : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(static_cast<double>(params.steps) *
                                                                           static_cast<double>(pilot.n) /
                                                                           static_cast<double>(params.n)));

  std::vector<std::uint64_t> pilot_seeds(options.pilots);
  for (auto& s : pilot_seeds) s = rng();

  const double target = params.target_mean_degree;
  const double tol = options.relative_tolerance * target;
  auto degree_at = [&](double p_delta) {
    pilot.p_delta = p_delta;
    double sum = 0.0;
    for (std::uint64_t s : pilot_seeds) {
      Rng r(s);
      sum += mean_degree(koskk_generate(pilot, r));
    }
    return sum / static_cast<double>(pilot_seeds.size());
  };
  auto bracket_error = [&](const std::string& why, double d_lo, double d_hi) {
    std::ostringstream msg;
    msg << why << ": target mean degree " << target << ", bracket degrees [" << d_lo << ", "
        << d_hi << "]";
    return CalibrationError(msg.str(), d_lo, d_hi);
  };

  double lo = 0.0;
  double d_lo = degree_at(lo);
  if (std::abs(d_lo - target) <= tol) return lo;
  if (d_lo > target) throw bracket_error("target unreachable (below p_delta = 0)", d_lo, d_lo);

  // Walk the upper end down from 1 geometrically so dense high-p_delta pilots
  // are only simulated when the target actually needs them.
  double hi = 1.0 / 1024.0;
  double d_hi = degree_at(hi);
  while (d_hi < target - tol && hi < 1.0) {
    lo = hi;
    d_lo = d_hi;
    hi = std::min(1.0, hi * 2.0);
    d_hi = degree_at(hi);
  }
  if (std::abs(d_hi - target) <= tol) return hi;
  if (d_hi < target) throw bracket_error("target unreachable (above p_delta = 1)", d_lo, d_hi);

  for (std::size_t it = 0; it < options.max_bisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = degree_at(mid);
    if (std::abs(d - target) <= tol) return mid;
    if (d < target) {
      lo = mid;
      d_lo = d;
    } else {
      hi = mid;
      d_hi = d;
    }
  }
  throw bracket_error("bisection did not converge", d_lo, d_hi);
}

Network assign_groups(const Network& net, double p_a, Rng& rng) {
  if (!is_probability(p_a)) throw InvalidArgument("p_a must lie in [0, 1]");
  const std::size_t n = net.node_count();
  const auto n_a = static_cast<std::size_t>(std::llround(p_a * static_cast<double>(n)));
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::vector<NodeId> chosen;
  chosen.reserve(n_a);
  std::sample(ids.begin(), ids.end(), std::back_inserter(chosen), n_a, rng);
  std::vector<Group> groups(n, Group::B);
  for (NodeId v : chosen) groups[v] = Group::A;
  return net.with_groups(std::move(groups));
}

Network tune_activity_ratio(const Network& net, const TuneTargets& targets, Rng& rng) {
  if (!(targets.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(targets.target_w > 0.0)) throw InvalidArgument("target activity ratio must be positive");
  std::vector<NodeId> members_a;
  std::vector<NodeId> members_b;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.group(v) == Group::A) {
      members_a.push_back(v);
      sum_a += static_cast<double>(net.degree(v));
    } else {
      members_b.push_back(v);
      sum_b += static_cast<double>(net.degree(v));
    }
  }
  if (members_a.empty() || members_b.empty())
    throw InvalidArgument("tune_activity_ratio needs both groups non-empty");
  if (sum_a == 0.0 || sum_b == 0.0) throw InvalidArgument("a group has no links");

  const double n_a = static_cast<double>(members_a.size());
  const double n_b = static_cast<double>(members_b.size());
  auto ratio = [&] { return (sum_a / n_a) / (sum_b / n_b); };

  std::vector<Group> groups = net.groups();
  double w = ratio();
  double best = w;
  for (std::uint64_t it = 0; std::abs(w - targets.target_w) > targets.tolerance; ++it) {
    if (it >= targets.max_iterations) {
      std::ostringstream msg;
      msg << "activity ratio target " << targets.target_w << " not reached in "
          << targets.max_iterations << " iterations (best " << best << ")";
      throw TuningError(msg.str(), best);
    }
    const std::size_t ia = uniform_index(rng, members_a.size());
    const std::size_t ib = uniform_index(rng, members_b.size());
    const NodeId i = members_a[ia];
    const NodeId j = members_b[ib];
    const auto d_i = static_cast<double>(net.degree(i));
    const auto d_j = static_cast<double>(net.degree(j));
    const bool swap = w > targets.target_w ? d_i > d_j : d_i < d_j;
    if (!swap) continue;
    members_a[ia] = j;
    members_b[ib] = i;
    groups[i] = Group::B;
    groups[j] = Group::A;
    sum_a += d_j - d_i;
    sum_b += d_i - d_j;
    w = ratio();
    if (std::abs(w - targets.target_w) < std::abs(best - targets.target_w)) best = w;
  }
  return net.with_groups(std::move(groups));
}

namespace {

struct Link {
  NodeId u;
  NodeId v;
  double weight;
};

class RewiringState {
 public:
  explicit RewiringState(const Network& net) : adj_(net.node_count()), groups_(net.groups()) {
    for (const Edge& e : net.edges()) add({e.u, e.v, e.weight});
  }

  std::vector<Link>& bucket(Group x, Group y) {
    if (x != y) return cross_;
    return x == Group::A ? within_a_ : within_b_;
  }

  bool linked(NodeId u, NodeId v) const {
    const auto& list = adj_[u];
    return std::find(list.begin(), list.end(), v) != list.end();
  }

  void add(Link l) {
    adj_[l.u].push_back(l.v);
    adj_[l.v].push_back(l.u);
    bucket(groups_[l.u], groups_[l.v]).push_back(l);
  }

  // Removes the link at position `pos` of `from` (swap-pop) and returns it.
  Link take(std::vector<Link>& from, std::size_t pos) {
    Link l = from[pos];
    from[pos] = from.back();
    from.pop_back();
    unlink(l.u, l.v);
    unlink(l.v, l.u);
    return l;
  }

  std::size_t cross_count() const { return cross_.size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(within_a_.size() + within_b_.size() + cross_.size());
    for (const auto* b : {&within_a_, &within_b_, &cross_})
      for (const Link& l : *b) out.push_back({l.u, l.v, l.weight});
    return out;
  }

 private:
  void unlink(NodeId u, NodeId v) {
    auto& list = adj_[u];
    auto it = std::find(list.begin(), list.end(), v);
    *it = list.back();
    list.pop_back();
  }

  std::vector<std::vector<NodeId>> adj_;
  std::vector<Group> groups_;
  std::vector<Link> within_a_;
  std::vector<Link> within_b_;
  std::vector<Link> cross_;
};

}  // namespace

Network tune_homophily(const Network& net, const TuneTargets& targets, Rng& rng) {
  if (!(targets.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::size_t n = net.node_count();
  const std::size_t n_b = net.group_size(Group::B);
  if (n_b == 0 || n_b == n) throw InvalidArgument("tune_homophily needs both groups non-empty");
  double degree_sum_a = 0.0;
  for (NodeId v = 0; v < n; ++v)
    if (net.group(v) == Group::A) degree_sum_a += static_cast<double>(net.degree(v));
  if (degree_sum_a == 0.0) throw InvalidArgument("group A has no links");
  const double p_b = static_cast<double>(n_b) / static_cast<double>(n);

  RewiringState state(net);
  auto homophily = [&] {
    return 1.0 - (static_cast<double>(state.cross_count()) / degree_sum_a) / p_b;
  };

  double h = homophily();
  double best = h;
  auto give_up = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "homophily target " << targets.target_h << " not reached: " << why << " (best " << best
        << ")";
    return TuningError(msg.str(), best);
  };

  for (std::uint64_t it = 0; std::abs(h - targets.target_h) > targets.tolerance; ++it) {
    if (it >= targets.max_iterations)
      throw give_up(std::to_string(targets.max_iterations) + " iterations exhausted");
    if (h > targets.target_h) {
      auto& aa = state.bucket(Group::A, Group::A);
      auto& bb = state.bucket(Group::B, Group::B);
      if (aa.empty() || bb.empty()) throw give_up("no within-group link pair left to rewire");
      const std::size_t pa = uniform_index(rng, aa.size());
      const std::size_t pb = uniform_index(rng, bb.size());
      auto [i, j, w1] = aa[pa];
      auto [k, l, w2] = bb[pb];
      if (bernoulli(rng, 0.5)) std::swap(i, j);
      if (bernoulli(rng, 0.5)) std::swap(k, l);
      if (state.linked(i, k) || state.linked(j, l)) continue;
      state.take(aa, pa);
      state.take(bb, pb);
      state.add({i, k, w1});
      state.add({j, l, w2});
    } else {
      auto& ab = state.bucket(Group::A, Group::B);
      if (ab.size() < 2) throw give_up("fewer than two cross-group links left to rewire");
      std::size_t p1 = uniform_index(rng, ab.size());
      std::size_t p2 = uniform_index(rng, ab.size());
      if (p1 == p2) continue;
      auto oriented = [&](const Link& x) {
        return net.group(x.u) == Group::A ? x : Link{x.v, x.u, x.weight};
      };
      const Link e1 = oriented(ab[p1]);
      const Link e2 = oriented(ab[p2]);
      if (e1.u == e2.u || e1.v == e2.v) continue;
      if (state.linked(e1.u, e2.u) || state.linked(e1.v, e2.v)) continue;
      if (p1 < p2) std::swap(p1, p2);
      state.take(ab, p1);
      state.take(ab, p2);
      state.add({e1.u, e2.u, e1.weight});
      state.add({e1.v, e2.v, e2.weight});
    }
    h = homophily();
    if (std::abs(h - targets.target_h) < std::abs(best - targets.target_h)) best = h;
  }

  const auto edges = state.edges();
  return Network(n, edges, net.groups(), net.weighted());
}

}  // namespace rdslab
