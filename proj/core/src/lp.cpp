#include "gbp/lp.hpp"

#include <algorithm>
#include <sstream>

namespace gbp {

long long PartitionPolytope::card_bound(int group, int t) const {
  auto it = cardinality_bound.find(group);
  if (it == cardinality_bound.end()) return type_bins[static_cast<size_t>(t)];
  return it->second[static_cast<size_t>(t)];
}

namespace {

std::vector<long long> first_primes(size_t count) {
  std::vector<long long> primes;
  long long candidate = 2;
  while (primes.size() < count) {
    bool prime = true;
    for (long long p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

// Dense tableau simplex: min c x, A x = b, x >= 0, with b >= 0 and an
// initial basis of slacks and artificials. Bland's rule throughout.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b, size_t n_structural)
      : a_(std::move(a)), b_(std::move(b)), n_structural_(n_structural) {
    m_ = a_.size();
    n_ = m_ ? a_[0].size() : 0;
    basis_.assign(m_, -1);
  }

  size_t cols() const { return n_; }
  void set_basis(size_t row, size_t col) { basis_[row] = static_cast<long long>(col); }

  // returns optimum value
  Rational minimize(const std::vector<Rational>& cost) {
    reduced_ = cost;
    obj_ = 0;
    // price out the basic columns
    for (size_t r = 0; r < m_; ++r) {
      size_t bc = static_cast<size_t>(basis_[r]);
      if (reduced_[bc] == 0) continue;
      Rational f = reduced_[bc];
      for (size_t c = 0; c < n_; ++c) reduced_[c] -= f * a_[r][c];
      obj_ -= f * b_[r];
    }
    while (true) {
      size_t enter = n_;
      for (size_t c = 0; c < n_; ++c) {
        if (blocked_[c]) continue;
        if (reduced_[c] < 0) {
          enter = c;
          break;  // Bland: lowest eligible index
        }
      }
      if (enter == n_) break;
      size_t leave = m_;
      Rational best_ratio;
      for (size_t r = 0; r < m_; ++r) {
        if (a_[r][enter] <= 0) continue;
        Rational ratio = b_[r] / a_[r][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == m_) throw std::runtime_error("simplex: unbounded");
      pivot(leave, enter);
    }
    return -obj_;
  }

  void pivot(size_t row, size_t col) {
    Rational piv = a_[row][col];
    for (size_t c = 0; c < n_; ++c) a_[row][c] /= piv;
    b_[row] /= piv;
    for (size_t r = 0; r < m_; ++r) {
      if (r == row || a_[r][col] == 0) continue;
      Rational f = a_[r][col];
      for (size_t c = 0; c < n_; ++c) a_[r][c] -= f * a_[row][c];
      b_[r] -= f * b_[row];
    }
    Rational f = reduced_[col];
    if (f != 0) {
      for (size_t c = 0; c < n_; ++c) reduced_[c] -= f * a_[row][c];
      obj_ -= f * b_[row];
    }
    basis_[row] = static_cast<long long>(col);
  }

  // After phase 1: pivot artificials out of the basis where possible, drop
  // redundant rows, and block artificial columns from ever re-entering.
  void retire_artificials(size_t first_artificial) {
    for (size_t r = 0; r < m_; ++r) {
      if (static_cast<size_t>(basis_[r]) < first_artificial) continue;
      size_t enter = n_;
      for (size_t c = 0; c < first_artificial; ++c)
        if (a_[r][c] != 0 && !blocked_[c]) {
          enter = c;
          break;
        }
      if (enter < n_) {
        pivot(r, enter);
      } else {
        // row is redundant; zero it out and park the artificial at level 0
        for (size_t c = 0; c < n_; ++c) a_[r][c] = 0;
        a_[r][static_cast<size_t>(basis_[r])] = 1;
        b_[r] = 0;
      }
    }
    for (size_t c = first_artificial; c < n_; ++c) blocked_[c] = true;
  }

  void init_blocked() { blocked_.assign(n_, false); }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_, Rational(0));
    for (size_t r = 0; r < m_; ++r) x[static_cast<size_t>(basis_[r])] = b_[r];
    return x;
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<long long> basis_;
  std::vector<Rational> reduced_;
  std::vector<bool> blocked_;
  Rational obj_;
  size_t m_ = 0, n_ = 0, n_structural_ = 0;
};

}  // namespace

FindVertexResult find_vertex(const PartitionPolytope& P) {
  FindVertexResult out;
  int n_items = P.n_items();
  int n_types = P.n_types();
  out.vertex.x.assign(static_cast<size_t>(n_items),
                      std::vector<Rational>(static_cast<size_t>(n_types), Rational(0)));
  if (n_items == 0) {
    out.feasible = true;
    // all constraints trivially tight-free; certificate empty
    return out;
  }

  // variable map: non-forbidden pairs with positive cardinality headroom
  std::vector<std::pair<int, int>> vars;
  std::vector<std::vector<int>> var_of(static_cast<size_t>(n_items),
                                       std::vector<int>(static_cast<size_t>(n_types), -1));
  for (int l = 0; l < n_items; ++l)
    for (int t = 0; t < n_types; ++t) {
      if (P.forbidden(l, t)) continue;
      if (P.card_bound(P.item_group[static_cast<size_t>(l)], t) <= 0) continue;
      var_of[static_cast<size_t>(l)][static_cast<size_t>(t)] = static_cast<int>(vars.size());
      vars.push_back({l, t});
    }
  for (const auto& [g, bounds] : P.cardinality_bound)
    for (long long L : bounds)
      if (L < 0) return out;  // infeasible outright

  // rows: capacity (slack), cardinality (slack), assignment (artificial)
  struct Row {
    std::vector<std::pair<int, Rational>> coeff;  // (var, a)
    Rational rhs;
    bool equality;
  };
  std::vector<Row> rows;
  for (int t = 0; t < n_types; ++t) {
    Row r;
    r.equality = false;
    r.rhs = P.type_free[static_cast<size_t>(t)] * P.type_bins[static_cast<size_t>(t)];
    for (int l = 0; l < n_items; ++l) {
      int v = var_of[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (v >= 0 && P.item_size[static_cast<size_t>(l)] != 0)
        r.coeff.push_back({v, P.item_size[static_cast<size_t>(l)]});
    }
    rows.push_back(std::move(r));
  }
  std::map<int, std::vector<int>> members;  // group -> item locals
  for (int l = 0; l < n_items; ++l) members[P.item_group[static_cast<size_t>(l)]].push_back(l);
  for (const auto& [g, ids] : members) {
    for (int t = 0; t < n_types; ++t) {
      long long L = P.card_bound(g, t);
      Row r;
      r.equality = false;
      r.rhs = Rational(L);
      for (int l : ids) {
        int v = var_of[static_cast<size_t>(l)][static_cast<size_t>(t)];
        if (v >= 0) r.coeff.push_back({v, Rational(1)});
      }
      if (static_cast<long long>(r.coeff.size()) <= L) continue;  // can never bind
      rows.push_back(std::move(r));
    }
  }
  size_t n_ineq = rows.size();
  for (int l = 0; l < n_items; ++l) {
    Row r;
    r.equality = true;
    r.rhs = Rational(1);
    for (int t = 0; t < n_types; ++t) {
      int v = var_of[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (v >= 0) r.coeff.push_back({v, Rational(1)});
    }
    if (r.coeff.empty()) return out;  // item admits no type: infeasible
    rows.push_back(std::move(r));
  }

  size_t m = rows.size();
  size_t n_struct = vars.size();
  size_t n_slack = n_ineq;
  size_t n_art = m - n_ineq;
  size_t n_total = n_struct + n_slack + n_art;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n_total, Rational(0)));
  std::vector<Rational> b(m);
  for (size_t r = 0; r < m; ++r) {
    for (const auto& [v, c] : rows[r].coeff) a[r][static_cast<size_t>(v)] = c;
    b[r] = rows[r].rhs;
  }
  for (size_t r = 0; r < n_ineq; ++r) a[r][n_struct + r] = 1;
  for (size_t r = n_ineq; r < m; ++r) a[r][n_struct + n_slack + (r - n_ineq)] = 1;

  Simplex sx(std::move(a), std::move(b), n_struct);
  sx.init_blocked();
  for (size_t r = 0; r < n_ineq; ++r) sx.set_basis(r, n_struct + r);
  for (size_t r = n_ineq; r < m; ++r) sx.set_basis(r, n_struct + n_slack + (r - n_ineq));

  std::vector<Rational> phase1(n_total, Rational(0));
  for (size_t c = n_struct + n_slack; c < n_total; ++c) phase1[c] = 1;
  Rational p1 = sx.minimize(phase1);
  if (p1 != 0) return out;  // infeasible, certified by positive phase-1 optimum
  sx.retire_artificials(n_struct + n_slack);

  auto primes = first_primes(n_struct);
  std::vector<Rational> phase2(n_total, Rational(0));
  for (size_t c = 0; c < n_struct; ++c) phase2[c] = Rational(1, primes[c]);
  sx.minimize(phase2);

  std::vector<Rational> x = sx.solution();
  for (size_t v = 0; v < n_struct; ++v)
    out.vertex.x[static_cast<size_t>(vars[v].first)][static_cast<size_t>(vars[v].second)] =
        x[v];
  out.feasible = true;

  // certificate: measured tight constraints
  auto& cert = out.vertex.certificate;
  for (int l = 0; l < n_items; ++l)
    for (int t = 0; t < n_types; ++t) {
      const Rational& val = out.vertex.x[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (val != 0) continue;
      bool structural = P.forbidden(l, t) ||
                        P.card_bound(P.item_group[static_cast<size_t>(l)], t) <= 0;
      cert.push_back({structural ? TightKind::FixedZero : TightKind::NonNeg, l, t});
    }
  for (int l = 0; l < n_items; ++l) cert.push_back({TightKind::Assignment, l, -1});
  for (int t = 0; t < n_types; ++t) {
    Rational used(0);
    for (int l = 0; l < n_items; ++l)
      used += out.vertex.x[static_cast<size_t>(l)][static_cast<size_t>(t)] *
              P.item_size[static_cast<size_t>(l)];
    if (used == P.type_free[static_cast<size_t>(t)] * P.type_bins[static_cast<size_t>(t)])
      cert.push_back({TightKind::Capacity, -1, t});
  }
  for (const auto& [g, ids] : members)
    for (int t = 0; t < n_types; ++t) {
      Rational used(0);
      for (int l : ids) used += out.vertex.x[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (used == Rational(P.card_bound(g, t)))
        cert.push_back({TightKind::Cardinality, g, t});
    }
  return out;
}

bool verify_vertex(const PartitionPolytope& P, const VertexSolution& v, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int n_items = P.n_items(), n_types = P.n_types();
  for (int l = 0; l < n_items; ++l) {
    Rational assigned(0);
    for (int t = 0; t < n_types; ++t) {
      const Rational& val = v.x[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (val < 0 || val > 1) return fail("coordinate outside [0,1]");
      if (P.forbidden(l, t) && val != 0) return fail("forbidden pair nonzero");
      assigned += val;
    }
    if (assigned != 1) return fail("assignment row not 1");
  }
  for (int t = 0; t < n_types; ++t) {
    Rational used(0);
    for (int l = 0; l < n_items; ++l)
      used += v.x[static_cast<size_t>(l)][static_cast<size_t>(t)] *
              P.item_size[static_cast<size_t>(l)];
    if (used > P.type_free[static_cast<size_t>(t)] * P.type_bins[static_cast<size_t>(t)])
      return fail("capacity row violated");
  }
  std::map<int, std::vector<int>> members;
  for (int l = 0; l < n_items; ++l) members[P.item_group[static_cast<size_t>(l)]].push_back(l);
  for (const auto& [g, ids] : members)
    for (int t = 0; t < n_types; ++t) {
      Rational used(0);
      for (int l : ids) used += v.x[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (used > Rational(P.card_bound(g, t))) return fail("cardinality row violated");
    }
  return true;
}

int certificate_rank(const PartitionPolytope& P, const VertexSolution& v) {
  int n_items = P.n_items(), n_types = P.n_types();
  size_t dim = static_cast<size_t>(n_items) * static_cast<size_t>(n_types);
  auto coord = [&](int l, int t) {
    return static_cast<size_t>(l) * static_cast<size_t>(n_types) + static_cast<size_t>(t);
  };
  std::vector<std::vector<Rational>> rows;
  for (const TightConstraint& c : v.certificate) {
    std::vector<Rational> row(dim, Rational(0));
    switch (c.kind) {
      case TightKind::FixedZero:
      case TightKind::NonNeg:
        row[coord(c.a, c.b)] = 1;
        break;
      case TightKind::Assignment:
        for (int t = 0; t < n_types; ++t) row[coord(c.a, t)] = 1;
        break;
      case TightKind::Capacity:
        for (int l = 0; l < n_items; ++l)
          row[coord(l, c.b)] = P.item_size[static_cast<size_t>(l)];
        break;
      case TightKind::Cardinality:
        for (int l = 0; l < n_items; ++l)
          if (P.item_group[static_cast<size_t>(l)] == c.a) row[coord(l, c.b)] = 1;
        break;
    }
    rows.push_back(std::move(row));
  }
  // Gaussian elimination over the rationals
  int rank = 0;
  size_t col = 0;
  for (; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    size_t pivot = rows.size();
    for (size_t r = static_cast<size_t>(rank); r < rows.size(); ++r)
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
    const Rational piv = rows[static_cast<size_t>(rank)][col];
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<size_t>(rank) || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / piv;
      for (size_t c2 = col; c2 < dim; ++c2)
        rows[r][c2] -= f * rows[static_cast<size_t>(rank)][c2];
    }
    ++rank;
  }
  return rank;
}

FractionalStats analyze_fractional(const VertexSolution& v, const PartitionPolytope& P) {
  FractionalStats st;
  int n_items = P.n_items(), n_types = P.n_types();
  std::map<int, int> frac_items;
  for (int l = 0; l < n_items; ++l) {
    bool fractional = false;
    for (int t = 0; t < n_types; ++t) {
      const Rational& val = v.x[static_cast<size_t>(l)][static_cast<size_t>(t)];
      if (val != 0 && val != 1) fractional = true;
    }
    if (fractional) frac_items[P.item_group[static_cast<size_t>(l)]]++;
  }
  st.fractional_groups = static_cast<int>(frac_items.size());
  st.per_group_fractional_items = frac_items;
  if (st.fractional_groups > n_types)
    throw VertexCertificateError("more than |T| fractional groups: not a vertex");
  for (const auto& [g, c] : frac_items)
    if (c > 2 * n_types)
      throw VertexCertificateError("group " + std::to_string(g) +
                                   " has more than 2|T| fractional items: not a vertex");
  return st;
}

bool is_tu_pattern(const std::vector<std::vector<int>>& A) {
  if (A.empty()) return true;
  size_t cols = A[0].size();
  for (const auto& row : A)
    for (int e : row)
      if (e < -1 || e > 1) return false;
  for (size_t c = 0; c < cols; ++c) {
    int nonzeros = 0, sum = 0;
    for (const auto& row : A) {
      if (row[c] != 0) {
        ++nonzeros;
        sum += row[c];
      }
    }
    if (nonzeros > 2) return false;
    if (nonzeros == 2 && sum != 0) return false;
  }
  return true;
}

bool verify_tu_substructure(const PartitionPolytope& P, int group) {
  std::vector<int> members;
  for (int l = 0; l < P.n_items(); ++l)
    if (P.item_group[static_cast<size_t>(l)] == group) members.push_back(l);
  if (members.empty()) return true;
  int n_types = P.n_types();
  size_t cols = members.size() * static_cast<size_t>(n_types);
  auto col_of = [&](size_t mi, int t) { return mi * static_cast<size_t>(n_types) + static_cast<size_t>(t); };
  std::vector<std::vector<int>> A;
  for (size_t mi = 0; mi < members.size(); ++mi)
    for (int t = 0; t < n_types; ++t)
      if (P.forbidden(members[mi], t)) {
        std::vector<int> row(cols, 0);
        row[col_of(mi, t)] = 1;
        A.push_back(std::move(row));
      }
  for (size_t mi = 0; mi < members.size(); ++mi) {
    std::vector<int> row(cols, 0);
    for (int t = 0; t < n_types; ++t)
      if (!P.forbidden(members[mi], t)) row[col_of(mi, t)] = -1;
    A.push_back(std::move(row));
  }
  for (int t = 0; t < n_types; ++t) {
    std::vector<int> row(cols, 0);
    for (size_t mi = 0; mi < members.size(); ++mi)
      if (!P.forbidden(members[mi], t)) row[col_of(mi, t)] = 1;
    A.push_back(std::move(row));
  }
  return is_tu_pattern(A);
}

std::string dump_polytope(const PartitionPolytope& P) {
  std::ostringstream os;
  for (int l = 0; l < P.n_items(); ++l)
    os << "item " << l << " " << P.item_ids[static_cast<size_t>(l)] << " "
       << format_rational(P.item_size[static_cast<size_t>(l)]) << " "
       << P.item_group[static_cast<size_t>(l)] << "\n";
  for (int t = 0; t < P.n_types(); ++t)
    os << "capacity " << t << " " << format_rational(P.type_free[static_cast<size_t>(t)])
       << " " << P.type_bins[static_cast<size_t>(t)] << "\n";
  for (int l = 0; l < P.n_items(); ++l) os << "assign " << l << "\n";
  for (const auto& [g, bounds] : P.cardinality_bound)
    for (int t = 0; t < P.n_types(); ++t)
      os << "card " << g << " " << t << " " << bounds[static_cast<size_t>(t)] << "\n";
  for (int l = 0; l < P.n_items(); ++l)
    for (int t = 0; t < P.n_types(); ++t)
      if (P.forbidden(l, t)) os << "forbid " << l << " " << t << "\n";
  return os.str();
}

}  // namespace gbp
