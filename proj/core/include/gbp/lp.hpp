#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gbp/rational.hpp"

namespace gbp {

// The small-item partition polytope P over x in [0,1]^{items x types}:
//   x_{l,t} = 0                   where s_l > eps * f(t)  (and extra pairs)
//   sum_l x_{l,t} s_l <= f(t)|t|  per type
//   sum_t x_{l,t} = 1             per item
//   sum_{l in G_j} x_{l,t} <= L_{t,j} = |t| - |content_j(t)|  per group, type
// Indices here are local; item_ids maps back to instance ids.
struct PartitionPolytope {
  std::vector<int> item_ids;
  std::vector<Rational> item_size;
  std::vector<int> item_group;  // original group ids
  std::vector<Rational> type_free;
  std::vector<long long> type_bins;
  Rational eps;
  std::set<std::pair<int, int>> extra_forbidden;          // (item local idx, type)
  std::map<int, std::vector<long long>> cardinality_bound;  // group -> L per type

  int n_items() const { return static_cast<int>(item_ids.size()); }
  int n_types() const { return static_cast<int>(type_free.size()); }
  bool forbidden(int l, int t) const {
    if (extra_forbidden.count({l, t})) return true;
    return item_size[static_cast<size_t>(l)] > eps * type_free[static_cast<size_t>(t)];
  }
  long long card_bound(int group, int t) const;
};

enum class TightKind { FixedZero, NonNeg, Capacity, Assignment, Cardinality };

struct TightConstraint {
  TightKind kind;
  int a = -1;  // item (FixedZero/NonNeg/Assignment) or group (Cardinality)
  int b = -1;  // type, where applicable
};

struct VertexSolution {
  std::vector<std::vector<Rational>> x;  // [item][type]
  std::vector<TightConstraint> certificate;
};

struct FindVertexResult {
  bool feasible = false;
  VertexSolution vertex;
};

// Phase-1/phase-2 simplex over exact rationals with Bland's rule; phase 2
// minimizes a generic objective (coefficient 1/p_i on the i-th variable,
// p_i the i-th prime) so the optimum sits at a single vertex. Infeasibility
// is certified by a positive phase-1 optimum.
FindVertexResult find_vertex(const PartitionPolytope& P);

// Exact re-substitution of every constraint. Zero tolerance.
bool verify_vertex(const PartitionPolytope& P, const VertexSolution& v,
                   std::string* why = nullptr);

// Rank of the tight-constraint normals over all item x type coordinates,
// by exact Gaussian elimination. Equals the coordinate count at a vertex.
int certificate_rank(const PartitionPolytope& P, const VertexSolution& v);

struct FractionalStats {
  int fractional_groups = 0;
  std::map<int, int> per_group_fractional_items;
};

struct VertexCertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counts fractional groups and fractional items per group; throws
// VertexCertificateError if a structural bound (<= |T| fractional groups,
// <= 2|T| fractional items in each) is violated, which indicates the point
// is not a vertex.
FractionalStats analyze_fractional(const VertexSolution& v, const PartitionPolytope& P);

// The three-part sufficient condition for total unimodularity: entries in
// {-1,0,1}, at most two nonzeros per column, opposite signs when two.
bool is_tu_pattern(const std::vector<std::vector<int>>& A);

// Builds the reduced constraint matrix of the per-group polytope P_j
// (forbidden rows, covering rows, cardinality rows) and checks is_tu_pattern.
bool verify_tu_substructure(const PartitionPolytope& P, int group);

// One row per line: "item l id s g", "capacity t f bins", "assign l",
// "card g t L", "forbid l t".
std::string dump_polytope(const PartitionPolytope& P);

}  // namespace gbp
