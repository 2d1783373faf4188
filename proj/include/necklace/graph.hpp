#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace necklace {

/// Undirected edge between two pearl vertices, 1-based.
struct Edge {
  int a = 0;
  int b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One pearl: M vertices, its internal edges and the two root vertices that
/// carry the links to the neighbouring pearls. Vertex numbers are 1-based.
class Pearl {
 public:
  /// Comb pearl with tooth spacing d: path 1..d, tooth d+1 hanging off vertex 1,
  /// roots 1 and d.
  static Pearl comb(int d);
  /// Single vertex; a necklace of K such pearls is the K-cycle.
  static Pearl cycle();
  /// Validated user pearl. Throws invalid-pearl naming the offending item.
  static Pearl custom(int m, std::vector<Edge> edges, int root_in, int root_out);

  int size() const noexcept { return m_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int root_in() const noexcept { return root_in_; }
  int root_out() const noexcept { return root_out_; }
  bool single_root() const noexcept { return root_in_ == root_out_; }

  /// Tooth spacing when the pearl was built by comb(), 0 for the cycle pearl,
  /// -1 otherwise.
  int comb_spacing() const noexcept { return comb_d_; }

  /// M x M symmetric 0/1 adjacency matrix.
  Eigen::MatrixXd adjacency() const;

  /// Same pearl with vertex v renamed to perm[v-1] (perm is a permutation of 1..M).
  Pearl relabeled(const std::vector<int>& perm) const;

 private:
  Pearl(int m, std::vector<Edge> edges, int root_in, int root_out, int comb_d)
      : m_(m), edges_(std::move(edges)), root_in_(root_in), root_out_(root_out), comb_d_(comb_d) {}

  int m_;
  std::vector<Edge> edges_;
  int root_in_;
  int root_out_;
  int comb_d_;
};

/// K copies of a pearl closed into a ring. Vertex (j, m), j in 1..K and m in
/// 1..M, lives at flat index (j-1)*M + (m-1).
class Necklace {
 public:
  Necklace(Pearl pearl, int pearls);

  const Pearl& pearl() const noexcept { return pearl_; }
  int pearls() const noexcept { return k_; }
  int pearl_size() const noexcept { return pearl_.size(); }
  int vertex_count() const noexcept { return k_ * pearl_.size(); }

  int index(int j, int m) const;

 private:
  Pearl pearl_;
  int k_;
};

/// Adjacency matrix of the full necklace: block-diagonal copies of the pearl
/// plus the ring links root_out(j) -- root_in(j+1), including the closing one.
Eigen::MatrixXd assemble_hamiltonian(const Necklace& necklace);

/// Pearl JSON uses 0-based vertex numbers:
/// {"m": int, "edges": [[a,b],...], "root_in": int, "root_out": int}
Pearl pearl_from_json(const nlohmann::json& j);
nlohmann::json pearl_to_json(const Pearl& pearl);
Pearl load_pearl_file(const std::filesystem::path& path);

}  // namespace necklace
