#include "mfgl/transport.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

namespace mfgl {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

struct Arc {
  int to;
  int rev;
  std::int64_t cap;
  int cost;
};

// Min-cost flow by the primal-dual method: Dijkstra on reduced costs to
// raise potentials, then Dinic max-flow on the zero-reduced-cost arcs.
class HypercubeFlow {
 public:
  HypercubeFlow(int n, std::vector<std::int64_t> supply)
      : n_(n), nodes_(static_cast<int>(supply.size())), supply_(std::move(supply)) {
    graph_.resize(static_cast<std::size_t>(nodes_) + 2);
    for (int u = 0; u < nodes_; ++u) {
      for (int i = 0; i < n_; ++i) add_arc(u, u ^ (1 << i), kInf, 1);
    }
    source_ = nodes_;
    sink_ = nodes_ + 1;
    for (int u = 0; u < nodes_; ++u) {
      const std::int64_t s = supply_[static_cast<std::size_t>(u)];
      if (s > 0) add_arc(source_, u, s, 0);
      if (s < 0) add_arc(u, sink_, -s, 0);
    }
    potential_.assign(static_cast<std::size_t>(nodes_), 0);
  }

  void solve() {
    while (true) {
      if (!update_potentials()) break;
      std::int64_t pushed = 0;
      while (build_levels()) {
        iter_.assign(graph_.size(), 0);
        while (const std::int64_t f = augment(source_, kInf)) pushed += f;
      }
      if (pushed == 0) throw NumericError("w1: transport solver made no progress");
    }
  }

  std::int64_t primal_cost() const {
    std::int64_t total = 0;
    for (int u = 0; u < nodes_; ++u) {
      for (const Arc& a : graph_[static_cast<std::size_t>(u)]) {
        if (a.cost == 1 && a.to < nodes_) total += kInf - a.cap;
      }
    }
    return total;
  }

  const std::vector<std::int64_t>& potential() const { return potential_; }

  bool certificate_holds() const {
    std::int64_t dual = 0;
    for (int u = 0; u < nodes_; ++u) {
      dual -= potential_[static_cast<std::size_t>(u)] * supply_[static_cast<std::size_t>(u)];
      for (const Arc& a : graph_[static_cast<std::size_t>(u)]) {
        if (a.cost != 1 || a.to >= nodes_) continue;
        const std::int64_t diff = potential_[static_cast<std::size_t>(a.to)] - potential_[static_cast<std::size_t>(u)];
        if (diff > 1 || diff < -1) return false;
        if (a.cap < kInf && diff != 1) return false;
      }
    }
    return dual == primal_cost();
  }

 private:
  void add_arc(int u, int v, std::int64_t cap, int cost) {
    auto& gu = graph_[static_cast<std::size_t>(u)];
    auto& gv = graph_[static_cast<std::size_t>(v)];
    gu.push_back({v, static_cast<int>(gv.size()), cap, cost});
    gv.push_back({u, static_cast<int>(gu.size()) - 1, 0, -cost});
  }

  std::int64_t reduced(int u, const Arc& a) const {
    return a.cost + potential_[static_cast<std::size_t>(u)] - potential_[static_cast<std::size_t>(a.to)];
  }

  // Multi-source Dijkstra from vertices with remaining excess. Returns false
  // when no excess remains.
  bool update_potentials() {
    std::vector<std::int64_t> dist(static_cast<std::size_t>(nodes_), kInf);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (const Arc& a : graph_[static_cast<std::size_t>(source_)]) {
      if (a.cap > 0) {
        dist[static_cast<std::size_t>(a.to)] = 0;
        heap.push({0, a.to});
      }
    }
    if (heap.empty()) return false;
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d != dist[static_cast<std::size_t>(u)]) continue;
      for (const Arc& a : graph_[static_cast<std::size_t>(u)]) {
        if (a.cap <= 0 || a.to >= nodes_) continue;
        const std::int64_t nd = d + reduced(u, a);
        if (nd < dist[static_cast<std::size_t>(a.to)]) {
          dist[static_cast<std::size_t>(a.to)] = nd;
          heap.push({nd, a.to});
        }
      }
    }
    for (int u = 0; u < nodes_; ++u) potential_[static_cast<std::size_t>(u)] += dist[static_cast<std::size_t>(u)];
    return true;
  }

  bool admissible(int u, const Arc& a) const {
    if (a.cap <= 0) return false;
    if (u >= nodes_ || a.to >= nodes_) return true;
    return reduced(u, a) == 0;
  }

  bool build_levels() {
    level_.assign(graph_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(source_)] = 0;
    q.push(source_);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const Arc& a : graph_[static_cast<std::size_t>(u)]) {
        if (admissible(u, a) && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink_)] >= 0;
  }

  std::int64_t augment(int u, std::int64_t limit) {
    if (u == sink_) return limit;
    auto& arcs = graph_[static_cast<std::size_t>(u)];
    for (int& k = iter_[static_cast<std::size_t>(u)]; k < static_cast<int>(arcs.size()); ++k) {
      Arc& a = arcs[static_cast<std::size_t>(k)];
      if (!admissible(u, a) || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      const std::int64_t got = augment(a.to, std::min(limit, a.cap));
      if (got > 0) {
        a.cap -= got;
        graph_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += got;
        return got;
      }
    }
    return 0;
  }

  int n_;
  int nodes_;
  int source_ = 0;
  int sink_ = 0;
  std::vector<std::int64_t> supply_;
  std::vector<std::vector<Arc>> graph_;
  std::vector<std::int64_t> potential_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

void check_pair(const DenseMeasure& a, const DenseMeasure& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("w1", a.dim(), b.dim());
}

}  // namespace

std::vector<std::int64_t> scaled_masses(const DenseMeasure& m) {
  std::vector<std::int64_t> out(m.size());
  std::int64_t total = 0;
  std::size_t largest = 0;
  for (std::size_t v = 0; v < m.size(); ++v) {
    out[v] = std::llround(m.prob(v) * kTransportScale);
    total += out[v];
    if (m.prob(v) > m.prob(largest)) largest = v;
  }
  out[largest] += static_cast<std::int64_t>(kTransportScale) - total;
  return out;
}

double w1_tree_bound(const DenseMeasure& a, const DenseMeasure& b) {
  check_pair(a, b);
  std::vector<double> excess(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) excess[v] = a.prob(v) - b.prob(v);
  double cost = 0.0;
  // Parent of v clears its highest set bit; children have larger indices.
  for (std::size_t v = a.size(); v-- > 1;) {
    const std::size_t parent = v & ~(std::size_t{1} << (std::bit_width(v) - 1));
    cost += std::abs(excess[v]);
    excess[parent] += excess[v];
  }
  return cost;
}

TransportResult w1_transport(const DenseMeasure& a, const DenseMeasure& b,
                             std::int64_t max_states, bool allow_bound) {
  check_pair(a, b);
  const auto states = static_cast<std::int64_t>(a.size());
  if (states > max_states) {
    if (!allow_bound) throw CapExceeded("transport states", max_states, states);
    TransportResult r;
    r.cost = w1_tree_bound(a, b);
    r.exact = false;
    r.dual_value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const std::vector<std::int64_t> ma = scaled_masses(a);
  const std::vector<std::int64_t> mb = scaled_masses(b);
  std::vector<std::int64_t> supply(ma.size());
  for (std::size_t v = 0; v < ma.size(); ++v) supply[v] = ma[v] - mb[v];

  HypercubeFlow flow(a.dim(), supply);
  flow.solve();

  TransportResult r;
  r.cost = static_cast<double>(flow.primal_cost()) / kTransportScale;
  r.exact = true;
  r.potential = flow.potential();
  const std::int64_t base = r.potential.empty() ? 0 : r.potential[0];
  for (std::int64_t& p : r.potential) p -= base;
  double dual = 0.0;
  for (std::size_t v = 0; v < ma.size(); ++v) {
    dual += static_cast<double>(r.potential[v]) * (b.prob(v) - a.prob(v));
  }
  r.dual_value = dual;
  r.certified = flow.certificate_holds();
  return r;
}

double w1_exact(const DenseMeasure& a, const DenseMeasure& b, std::int64_t max_states) {
  return w1_transport(a, b, max_states, false).cost;
}

}  // namespace mfgl
