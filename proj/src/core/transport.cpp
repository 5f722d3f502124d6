// Primal side of the norm: minimum-cost transshipment by successive shortest
// paths. Shares nothing with the simplex so the two routes check each other.

#include <algorithm>
#include <optional>

#include "error.hpp"
#include "free_space.hpp"

namespace freelip {
namespace {

struct Network {
  explicit Network(const MetricSpace& space) : s(space), n(space.size()), flow(n * n) {}

  const MetricSpace& s;
  std::size_t n;
  std::vector<Rational> flow;  // flow[p * n + q] on the arc p -> q

  Rational& at(std::size_t p, std::size_t q) { return flow[p * n + q]; }
};

struct Path {
  std::vector<std::size_t> nodes;  // source first
};

// Bellman-Ford from `source` over the residual network: forward arcs are
// uncapacitated with cost d(p,q); a reverse arc q -> p exists while p -> q
// carries flow and costs -d(p,q).
std::optional<Path> shortest_path(Network& net, std::size_t source, const std::vector<Rational>& excess) {
  const std::size_t n = net.n;
  std::vector<std::optional<Rational>> dist(n);
  std::vector<std::size_t> prev(n, n);
  dist[source] = Rational(0);
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (!dist[p]) continue;
      for (std::size_t q = 0; q < n; ++q) {
        if (p == q) continue;
        const Rational& dpq = net.s.d(PointId{p}, PointId{q});
        // Cheapest residual arc p -> q: reverse if q -> p carries flow.
        Rational cost = sgn(net.at(q, p)) > 0 ? Rational(-dpq) : dpq;
        Rational cand = *dist[p] + cost;
        if (!dist[q] || cand < *dist[q]) {
          dist[q] = std::move(cand);
          prev[q] = p;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  std::size_t sink = n;
  for (std::size_t q = 0; q < n; ++q) {
    if (sgn(excess[q]) < 0 && dist[q] && (sink == n || *dist[q] < *dist[sink])) sink = q;
  }
  if (sink == n) return std::nullopt;
  Path path;
  for (std::size_t v = sink; v != source; v = prev[v]) {
    path.nodes.push_back(v);
    if (path.nodes.size() > n) throw Error(ErrorCode::kInternal, "negative cycle in residual network");
  }
  path.nodes.push_back(source);
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

}  // namespace

Rational plan_cost(const MetricSpace& space, const TransportPlan& plan) {
  Rational total = 0;
  for (const auto& f : plan.flows) total += f.amount * space.d(f.from, f.to);
  return total;
}

FlowNormResult free_norm_flow(const FreeVector& mu) {
  const MetricSpace& s = mu.space();
  Network net(s);
  std::vector<Rational> excess(s.size());
  Rational total = 0;
  for (const auto& [index, value] : mu.coeffs()) {
    excess[index] = value;
    total += value;
  }
  excess[s.base().index] -= total;

  for (;;) {
    std::size_t source = s.size();
    for (std::size_t p = 0; p < s.size(); ++p) {
      if (sgn(excess[p]) > 0) {
        source = p;
        break;
      }
    }
    if (source == s.size()) break;
    auto path = shortest_path(net, source, excess);
    if (!path) throw Error(ErrorCode::kInternal, "unbalanced transshipment problem");
    const auto& nodes = path->nodes;
    Rational amount = excess[source];
    if (-excess[nodes.back()] < amount) amount = -excess[nodes.back()];
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const Rational& back = net.at(nodes[k + 1], nodes[k]);
      if (sgn(back) > 0 && back < amount) amount = back;
    }
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      std::size_t p = nodes[k], q = nodes[k + 1];
      Rational& back = net.at(q, p);
      if (sgn(back) > 0) {
        back -= amount;
      } else {
        net.at(p, q) += amount;
      }
    }
    excess[source] -= amount;
    excess[nodes.back()] += amount;
  }

  FlowNormResult result;
  for (std::size_t p = 0; p < s.size(); ++p) {
    for (std::size_t q = 0; q < s.size(); ++q) {
      if (sgn(net.at(p, q)) > 0) result.plan.flows.push_back({PointId{p}, PointId{q}, net.at(p, q)});
    }
  }
  result.norm = plan_cost(s, result.plan);
  return result;
}

bool plan_balances(const TransportPlan& plan, const FreeVector& mu) {
  const MetricSpace& s = mu.space();
  std::vector<Rational> net(s.size());
  for (const auto& f : plan.flows) {
    if (sgn(f.amount) < 0) return false;
    net[f.from.index] += f.amount;
    net[f.to.index] -= f.amount;
  }
  for (PointId p : s.points()) {
    if (p == s.base()) continue;
    if (net[p.index] != mu.coeff(p)) return false;
  }
  return true;
}

}  // namespace freelip
