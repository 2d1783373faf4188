#include "necklace/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

#include "necklace/error.hpp"

namespace necklace {
namespace {

std::string edge_text(const Edge& e) {
  return "{" + std::to_string(e.a) + "," + std::to_string(e.b) + "}";
}

void validate(int m, const std::vector<Edge>& edges, int root_in, int root_out) {
  if (m < 1) throw Error(ErrorKind::invalid_pearl, "vertex count must be positive, got " + std::to_string(m));
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.a < 1 || e.a > m || e.b < 1 || e.b > m) {
      throw Error(ErrorKind::invalid_pearl, "edge " + edge_text(e) + " has an out-of-range vertex");
    }
    if (e.a == e.b) throw Error(ErrorKind::invalid_pearl, "edge " + edge_text(e) + " is a self-loop");
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second) throw Error(ErrorKind::invalid_pearl, "edge " + edge_text(e) + " is a duplicate");
  }
  if (root_in < 1 || root_in > m) {
    throw Error(ErrorKind::invalid_pearl, "root_in " + std::to_string(root_in) + " out of range");
  }
  if (root_out < 1 || root_out > m) {
    throw Error(ErrorKind::invalid_pearl, "root_out " + std::to_string(root_out) + " out of range");
  }
}

}  // namespace

Pearl Pearl::comb(int d) {
  if (d < 1) throw Error(ErrorKind::invalid_parameter, "comb spacing d must be >= 1, got " + std::to_string(d));
  std::vector<Edge> edges;
  for (int m = 1; m < d; ++m) edges.push_back({m, m + 1});
  edges.push_back({1, d + 1});
  return Pearl(d + 1, std::move(edges), 1, d, d);
}

Pearl Pearl::cycle() { return Pearl(1, {}, 1, 1, 0); }

Pearl Pearl::custom(int m, std::vector<Edge> edges, int root_in, int root_out) {
  validate(m, edges, root_in, root_out);
  return Pearl(m, std::move(edges), root_in, root_out, -1);
}

Eigen::MatrixXd Pearl::adjacency() const {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m_, m_);
  for (const auto& e : edges_) {
    p(e.a - 1, e.b - 1) = 1.0;
    p(e.b - 1, e.a - 1) = 1.0;
  }
  return p;
}

Pearl Pearl::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != m_) {
    throw Error(ErrorKind::invalid_parameter, "permutation length does not match pearl size");
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < m_; ++i) {
    if (sorted[i] != i + 1) throw Error(ErrorKind::invalid_parameter, "not a permutation of 1..M");
  }
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_) edges.push_back({perm[e.a - 1], perm[e.b - 1]});
  return Pearl(m_, std::move(edges), perm[root_in_ - 1], perm[root_out_ - 1], -1);
}

Necklace::Necklace(Pearl pearl, int pearls) : pearl_(std::move(pearl)), k_(pearls) {
  if (pearls < 3) {
    throw Error(ErrorKind::invalid_parameter, "a necklace needs K >= 3 pearls, got " + std::to_string(pearls));
  }
}

int Necklace::index(int j, int m) const {
  if (j < 1 || j > k_ || m < 1 || m > pearl_.size()) {
    throw Error(ErrorKind::invalid_parameter,
                "vertex (" + std::to_string(j) + "," + std::to_string(m) + ") outside the necklace");
  }
  return (j - 1) * pearl_.size() + (m - 1);
}

Eigen::MatrixXd assemble_hamiltonian(const Necklace& necklace) {
  const int m = necklace.pearl_size();
  const int k = necklace.pearls();
  const int n = necklace.vertex_count();
  const Eigen::MatrixXd p = necklace.pearl().adjacency();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < k; ++j) h.block(j * m, j * m, m, m) = p;
  const int out = necklace.pearl().root_out();
  const int in = necklace.pearl().root_in();
  for (int j = 1; j <= k; ++j) {
    const int next = j % k + 1;
    const int a = necklace.index(j, out);
    const int b = necklace.index(next, in);
    h(a, b) = 1.0;
    h(b, a) = 1.0;
  }
  return h;
}

Pearl pearl_from_json(const nlohmann::json& j) {
  try {
    const int m = j.at("m").get<int>();
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::invalid_pearl, "edge " + e.dump() + " is not a pair");
      const int a = e[0].get<int>();
      const int b = e[1].get<int>();
      // report problems with the file's own 0-based numbering
      if (a < 0 || a >= m || b < 0 || b >= m) {
        throw Error(ErrorKind::invalid_pearl, "edge " + e.dump() + " has an out-of-range vertex");
      }
      if (a == b) throw Error(ErrorKind::invalid_pearl, "edge " + e.dump() + " is a self-loop");
      if (!seen.insert(std::minmax(a, b)).second) {
        throw Error(ErrorKind::invalid_pearl, "edge " + e.dump() + " is a duplicate");
      }
      edges.push_back({a + 1, b + 1});
    }
    const int root_in = j.at("root_in").get<int>();
    const int root_out = j.at("root_out").get<int>();
    for (int r : {root_in, root_out}) {
      if (r < 0 || r >= m) throw Error(ErrorKind::invalid_pearl, "root " + std::to_string(r) + " out of range");
    }
    return Pearl::custom(m, std::move(edges), root_in + 1, root_out + 1);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::invalid_pearl, std::string("malformed pearl JSON: ") + ex.what());
  }
}

nlohmann::json pearl_to_json(const Pearl& pearl) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : pearl.edges()) edges.push_back({e.a - 1, e.b - 1});
  return {{"m", pearl.size()}, {"edges", edges}, {"root_in", pearl.root_in() - 1}, {"root_out", pearl.root_out() - 1}};
}

Pearl load_pearl_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open pearl file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::invalid_pearl, "cannot parse " + path.string() + ": " + ex.what());
  }
  return pearl_from_json(j);
}

}  // namespace necklace
