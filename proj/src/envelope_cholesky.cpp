#include "steklov/envelope_cholesky.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace steklov::linalg {
namespace {

struct Graph {
  std::vector<int> ptr;
  std::vector<int> adj;
  int degree(int v) const { return ptr[v + 1] - ptr[v]; }
};

Graph pattern(const Eigen::SparseMatrix<double>& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::vector<int>> nb(n);
  for (int c = 0; c < a.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
      const int r = static_cast<int>(it.row());
      if (r == c) continue;
      nb[r].push_back(c);
      nb[c].push_back(r);
    }
  Graph g;
  g.ptr.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    std::sort(nb[v].begin(), nb[v].end());
    nb[v].erase(std::unique(nb[v].begin(), nb[v].end()), nb[v].end());
    g.ptr[v + 1] = g.ptr[v] + static_cast<int>(nb[v].size());
  }
  g.adj.reserve(g.ptr[n]);
  for (auto& l : nb) g.adj.insert(g.adj.end(), l.begin(), l.end());
  return g;
}

// Breadth-first level structure from `start` restricted to unvisited vertices.
// Returns the vertices in visiting order; `level` receives their depth.
std::vector<int> levels(const Graph& g, const std::vector<int>& start, const std::vector<char>& done,
                        std::vector<int>& level) {
  std::vector<int> order;
  for (int s : start) {
    if (level[s] >= 0) continue;
    level[s] = 0;
    order.push_back(s);
  }
  for (std::size_t h = 0; h < order.size(); ++h) {
    const int v = order[h];
    for (int k = g.ptr[v]; k < g.ptr[v + 1]; ++k) {
      const int w = g.adj[k];
      if (done[w] || level[w] >= 0) continue;
      level[w] = level[v] + 1;
      order.push_back(w);
    }
  }
  return order;
}

int pseudo_peripheral(const Graph& g, int root, const std::vector<char>& done, std::vector<int>& level) {
  int ecc = -1;
  for (int iter = 0; iter < 16; ++iter) {
    const auto order = levels(g, {root}, done, level);
    const int depth = level[order.back()];
    int best = order.back();
    for (auto it = order.rbegin(); it != order.rend() && level[*it] == depth; ++it)
      if (g.degree(*it) < g.degree(best) || (g.degree(*it) == g.degree(best) && *it < best)) best = *it;
    for (int v : order) level[v] = -1;
    if (depth <= ecc) break;
    ecc = depth;
    root = best;
  }
  return root;
}

} // namespace

std::vector<int> reverse_cuthill_mckee(const Eigen::SparseMatrix<double>& a, std::span<const int> start_key) {
  if (a.rows() != a.cols()) throw InvalidArgument("ordering needs a square matrix");
  const int n = static_cast<int>(a.rows());
  if (!start_key.empty() && static_cast<int>(start_key.size()) != n) throw InvalidArgument("start key size mismatch");
  const Graph g = pattern(a);
  std::vector<char> done(n, 0);
  std::vector<int> level(n, -1);
  std::vector<int> cm;
  cm.reserve(n);
  for (int root = 0; root < n; ++root) {
    if (done[root]) continue;
    // Component of root.
    auto comp = levels(g, {root}, done, level);
    for (int v : comp) level[v] = -1;
    int best_key = -1;
    if (!start_key.empty())
      for (int v : comp)
        if (start_key[v] >= 0 && (best_key < 0 || start_key[v] < best_key)) best_key = start_key[v];
    std::vector<int> start;
    if (best_key >= 0) {
      for (int v : comp)
        if (start_key[v] == best_key) start.push_back(v);
      std::sort(start.begin(), start.end());
    } else {
      start.push_back(pseudo_peripheral(g, root, done, level));
    }
    // Cuthill-McKee sweep: neighbours enqueued by increasing degree.
    std::size_t head = cm.size();
    for (int s : start) {
      done[s] = 1;
      cm.push_back(s);
    }
    std::vector<int> nb;
    while (head < cm.size()) {
      const int v = cm[head++];
      nb.clear();
      for (int k = g.ptr[v]; k < g.ptr[v + 1]; ++k)
        if (!done[g.adj[k]]) nb.push_back(g.adj[k]);
      std::sort(nb.begin(), nb.end(), [&](int x, int y) {
        return g.degree(x) != g.degree(y) ? g.degree(x) < g.degree(y) : x < y;
      });
      for (int w : nb) {
        done[w] = 1;
        cm.push_back(w);
      }
    }
  }
  std::reverse(cm.begin(), cm.end());
  return cm;
}

std::size_t envelope_size(const Eigen::SparseMatrix<double>& a, std::span<const int> perm) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> iperm(n);
  for (int i = 0; i < n; ++i) iperm[perm[i]] = i;
  std::vector<int> first(n);
  std::iota(first.begin(), first.end(), 0);
  for (int c = 0; c < a.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
      const int i = iperm[it.row()], j = iperm[c];
      if (j < i) first[i] = std::min(first[i], j);
    }
  std::size_t total = 0;
  for (int i = 0; i < n; ++i) total += static_cast<std::size_t>(i - first[i] + 1);
  return total;
}

EnvelopeCholesky::EnvelopeCholesky(const Eigen::SparseMatrix<double>& a, std::vector<int> perm) : perm_(std::move(perm)) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw InvalidArgument("Cholesky needs a square matrix");
  if (static_cast<int>(perm_.size()) != n) throw InvalidArgument("permutation size mismatch");
  if (n == 0) throw SolverError("empty interior block");
  iperm_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (perm_[i] < 0 || perm_[i] >= n || iperm_[perm_[i]] >= 0) throw InvalidArgument("invalid permutation");
    iperm_[perm_[i]] = i;
  }
  first_.resize(n);
  std::iota(first_.begin(), first_.end(), 0);
  for (int c = 0; c < a.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
      const int i = iperm_[it.row()], j = iperm_[c];
      if (j < i) first_[i] = std::min(first_[i], j);
    }
  start_.resize(n + 1);
  start_[0] = 0;
  for (int i = 0; i < n; ++i) {
    start_[i + 1] = start_[i] + static_cast<std::size_t>(i - first_[i] + 1);
    bandwidth_ = std::max(bandwidth_, i - first_[i]);
  }
  values_.assign(start_[n], 0.0);
  for (int c = 0; c < a.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
      const int i = iperm_[it.row()], j = iperm_[c];
      if (j <= i) values_[start_[i] + (j - first_[i])] += it.value();
    }

  for (int i = 0; i < n; ++i) {
    double* li = values_.data() + start_[i];
    const int fi = first_[i];
    for (int j = fi; j < i; ++j) {
      const int k0 = std::max(fi, first_[j]);
      const double* lj = values_.data() + start_[j];
      double s = li[j - fi];
      if (j > k0) {
        s -= Eigen::Map<const Eigen::VectorXd>(li + (k0 - fi), j - k0)
                 .dot(Eigen::Map<const Eigen::VectorXd>(lj + (k0 - first_[j]), j - k0));
      }
      li[j - fi] = s / lj[j - first_[j]];
    }
    double d = li[i - fi];
    if (i > fi) d -= Eigen::Map<const Eigen::VectorXd>(li, i - fi).squaredNorm();
    if (!(d > 0.0) || !std::isfinite(d))
      throw SolverError("Cholesky breakdown: interior block is not positive definite (pivot " + std::to_string(i) + ")");
    li[i - fi] = std::sqrt(d);
  }
}

void EnvelopeCholesky::forward(double* y) const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const int fi = first_[i];
    const double* li = row(i);
    double s = y[i];
    if (i > fi) s -= Eigen::Map<const Eigen::VectorXd>(li, i - fi).dot(Eigen::Map<const Eigen::VectorXd>(y + fi, i - fi));
    y[i] = s / li[i - fi];
  }
}

void EnvelopeCholesky::backward(double* x) const {
  for (int i = size() - 1; i >= 0; --i) {
    const int fi = first_[i];
    const double* li = row(i);
    x[i] /= li[i - fi];
    if (i > fi) Eigen::Map<Eigen::VectorXd>(x + fi, i - fi) -= x[i] * Eigen::Map<const Eigen::VectorXd>(li, i - fi);
  }
}

void EnvelopeCholesky::solve_in_place(Eigen::Ref<Eigen::VectorXd> b) const {
  const int n = size();
  if (b.size() != n) throw InvalidArgument("right-hand side size mismatch");
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = b[perm_[i]];
  forward(y.data());
  backward(y.data());
  for (int i = 0; i < n; ++i) b[perm_[i]] = y[i];
}

Eigen::MatrixXd EnvelopeCholesky::solve(const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd x = b;
  for (int c = 0; c < x.cols(); ++c) {
    Eigen::VectorXd col = x.col(c);
    solve_in_place(col);
    x.col(c) = col;
  }
  return x;
}

Eigen::MatrixXd EnvelopeCholesky::inverse_congruence(const Eigen::SparseMatrix<double>& r) const {
  const int n = size();
  const int m = static_cast<int>(r.cols());
  if (r.rows() != n) throw InvalidArgument("congruence factor has the wrong number of rows");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
  if (m == 0) return S;

  // Columns sorted by their first nonzero permuted row: the columns touched
  // by W = L^{-1} P R up to a given row form a prefix.
  std::vector<int> first_row(m, n);
  for (int c = 0; c < m; ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(r, c); it; ++it)
      if (it.value() != 0.0) first_row[c] = std::min(first_row[c], iperm_[it.row()]);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return first_row[x] < first_row[y]; });
  std::vector<int> position(m);
  for (int k = 0; k < m; ++k) position[order[k]] = k;

  // Permuted right-hand side, row-major by permuted row: (row, sorted column, value).
  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> entries;
  for (int c = 0; c < m; ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(r, c); it; ++it)
      entries.push_back({iperm_[it.row()], position[c], it.value()});
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });

  // reach[i]: leftmost column referenced by rows i and later.
  std::vector<int> reach(n + 1, n);
  for (int i = n - 1; i >= 0; --i) reach[i] = std::min(reach[i + 1], first_[i]);

  const int nb = 96;
  const int cap = bandwidth_ + nb;
  // Sliding window of W rows [base, base + cap).
  Eigen::MatrixXd win = Eigen::MatrixXd::Zero(cap, m);
  int base = 0;
  Eigen::MatrixXd Wb, panel, diag;
  std::size_t e = 0;
  Eigen::MatrixXd Ssorted = Eigen::MatrixXd::Zero(m, m);

  for (int i0 = 0; i0 < n; i0 += nb) {
    const int i1 = std::min(n, i0 + nb);
    const int rows = i1 - i0;
    const int act = static_cast<int>(std::upper_bound(order.begin(), order.end(), i1 - 1,
                                                      [&](int v, int c) { return v < first_row[c]; }) -
                                     order.begin());
    int f0 = i0;
    for (int i = i0; i < i1; ++i) f0 = std::min(f0, first_[i]);
    if (i1 - base > cap) {
      const int lo = reach[i0];
      const int keep = i0 - lo;
      if (keep > 0) win.topRows(keep) = win.middleRows(lo - base, keep).eval();
      base = lo;
    }

    Wb.setZero(rows, act);
    while (e < entries.size() && entries[e].row < i1) {
      if (entries[e].col < act) Wb(entries[e].row - i0, entries[e].col) += entries[e].value;
      ++e;
    }
    if (act > 0) {
      if (i0 > f0) {
        panel.setZero(rows, i0 - f0);
        for (int i = i0; i < i1; ++i)
          for (int k = std::max(first_[i], f0); k < i0; ++k) panel(i - i0, k - f0) = entry(i, k);
        Wb.noalias() -= panel * win.block(f0 - base, 0, i0 - f0, act);
      }
      diag.setZero(rows, rows);
      for (int i = i0; i < i1; ++i)
        for (int k = std::max(first_[i], i0); k <= i; ++k) diag(i - i0, k - i0) = entry(i, k);
      diag.triangularView<Eigen::Lower>().solveInPlace(Wb);
      Ssorted.topLeftCorner(act, act).selfadjointView<Eigen::Lower>().rankUpdate(Wb.transpose());
    }
    win.block(i0 - base, 0, rows, act) = Wb;
    win.block(i0 - base, act, rows, m - act).setZero();
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y <= x; ++y) {
      const double v = Ssorted(x, y);
      S(order[x], order[y]) = v;
      S(order[y], order[x]) = v;
    }
  return S;
}

} // namespace steklov::linalg
