#include "qdiscord/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "qdiscord/errors.hpp"
#include "qdiscord/jacobi.hpp"

namespace qdiscord {

namespace {

CMatrix pauli_pair(const CMatrix& a, const CMatrix& b) { return kron(a, b); }

struct BondTerms {
  CMatrix bond;
  double field = 0.0;  // coefficient h of -h sigma^z on every site
};

BondTerms bond_terms(const ModelSpec& m) {
  using namespace pauli;
  const CMatrix xx = pauli_pair(x(), x()), yy = pauli_pair(y(), y()), zz = pauli_pair(z(), z());
  BondTerms out;
  if (const auto* p = std::get_if<XXZ>(&m)) {
    out.bond = xx + yy + zz * Complex(p->delta);
  } else if (const auto* p = std::get_if<XY>(&m)) {
    out.bond = (xx + yy * Complex(p->alpha)) * Complex(-1.0);
  } else if (const auto* p = std::get_if<TFIM>(&m)) {
    out.bond = xx * Complex(-1.0);
    out.field = p->h;
  } else {
    const auto& f = std::get<XYField>(m);
    out.bond = (xx * Complex((1 + f.gamma) / 2) + yy * Complex((1 - f.gamma) / 2)) * Complex(-1.0);
    out.field = f.h;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> lattice_edges(std::size_t n, Geometry geometry,
                                                               std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  switch (geometry) {
    case Geometry::open_chain:
      for (std::size_t k = 0; k + 1 < n; ++k) e.emplace_back(k, k + 1);
      break;
    case Geometry::periodic_chain:
      if (n < 3) throw ArgumentError("a periodic chain needs at least 3 sites");
      for (std::size_t k = 0; k + 1 < n; ++k) e.emplace_back(k, k + 1);
      e.emplace_back(0, n - 1);
      break;
    case Geometry::grid: {
      if (cols < 2 || n % cols != 0 || n / cols < 2)
        throw ArgumentError("a grid needs cols >= 2 dividing n with at least 2 rows");
      const std::size_t rows = n / cols;
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          const std::size_t s = r * cols + c;
          if (c + 1 < cols) e.emplace_back(s, s + 1);
          if (r + 1 < rows) e.emplace_back(s, s + cols);
        }
      break;
    }
  }
  return e;
}

std::size_t bit_of(std::size_t site, std::size_t n) { return n - 1 - site; }

std::vector<std::size_t> validated_cut(std::span<const std::size_t> cut, std::size_t n) {
  std::vector<std::size_t> a(cut.begin(), cut.end());
  std::sort(a.begin(), a.end());
  if (a.empty()) throw ArgumentError("cut is empty");
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw ArgumentError("cut repeats a site");
  if (a.back() >= n) throw ArgumentError("cut site out of range");
  if (a.size() == n) throw ArgumentError("cut covers every site");
  return a;
}

void require_beta(double beta) {
  if (!(beta >= 0.0)) throw ArgumentError("beta must be nonnegative");
}

// Reduced state of one or two sites out of a side state on side_sites.
CMatrix marginal(const DensityMatrix& side, const std::vector<std::size_t>& side_sites,
                 std::vector<std::size_t> wanted) {
  if (wanted.size() == side_sites.size()) return side.entries();
  std::vector<std::size_t> pos;
  for (std::size_t s : wanted)
    pos.push_back(static_cast<std::size_t>(
        std::find(side_sites.begin(), side_sites.end(), s) - side_sites.begin()));
  return partial_trace(side, pos).entries();
}

double trace_product(const CMatrix& a, const CMatrix& b) {
  Complex t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

// rho with the qubits reordered as order[0], order[1], ...
CMatrix permute_qubits(const CMatrix& rho, const std::vector<std::size_t>& order, std::size_t n) {
  const std::size_t dim = rho.rows();
  std::vector<std::size_t> map(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = 0;
    for (std::size_t p = 0; p < n; ++p)
      if ((x >> bit_of(order[p], n)) & 1U) y |= std::size_t{1} << bit_of(p, n);
    map[x] = y;
  }
  CMatrix out(dim, dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) out(map[x], map[y]) = rho(x, y);
  return out;
}

AreaLawCheck check_with_state(const LatticeHamiltonian& h, const Spectrum& s,
                              const DensityMatrix& rho, std::span<const std::size_t> cut_in,
                              double beta, const AreaLawOptions& options) {
  const std::size_t n = h.n_sites;
  const auto a = validated_cut(cut_in, n);
  const auto b = complement(a, n);

  AreaLawCheck out;
  out.beta = beta;
  out.cut = a;
  const auto edges = boundary_edges(h, a);
  out.boundary_size = edges.size();
  for (std::size_t e : edges)
    out.max_term_norm = std::max(out.max_term_norm, frobenius_norm(h.edges[e].term));
  out.bound = area_law_bound(h, a, beta);

  const auto rho_a = partial_trace(rho, a);
  const auto rho_b = partial_trace(rho, b);
  const double sa = von_neumann_entropy(rho_a);
  const double sb = von_neumann_entropy(rho_b);
  const double sab = thermal_entropy(s, beta);
  const double info = sa + sb - sab;
  if (info < -kAreaLawSlack) throw InternalError("mutual information came out negative");
  out.mutual_info = std::max(info, 0.0);
  out.discord_upper = out.mutual_info;
  out.satisfied = out.mutual_info <= out.bound + kAreaLawSlack;

  if (beta > 0.0 && std::isfinite(beta)) {
    const auto weights = boltzmann_weights(s, beta);
    double energy = 0.0;
    for (std::size_t k = 0; k < s.blocks.size(); ++k)
      for (std::size_t i = 0; i < weights[k].size(); ++i)
        energy += weights[k][i] * s.blocks[k].values[i];
    double product_energy = 0.0;
    for (const auto& e : h.edges) {
      const bool ia = std::binary_search(a.begin(), a.end(), e.i);
      const bool ja = std::binary_search(a.begin(), a.end(), e.j);
      CMatrix sigma;
      if (ia == ja) {
        sigma = ia ? marginal(rho_a, a, {e.i, e.j}) : marginal(rho_b, b, {e.i, e.j});
      } else {
        const CMatrix mi = ia ? marginal(rho_a, a, {e.i}) : marginal(rho_b, b, {e.i});
        const CMatrix mj = ja ? marginal(rho_a, a, {e.j}) : marginal(rho_b, b, {e.j});
        sigma = kron(mi, mj);
      }
      product_energy += trace_product(e.term, sigma);
    }
    out.free_energy_checked = true;
    out.free_energy_joint = energy - sab / beta;
    out.free_energy_product = product_energy - (sa + sb) / beta;
    out.free_energy_ok = out.free_energy_joint <= out.free_energy_product + kAreaLawSlack;
  }

  if (b.size() == 1 && n <= options.oracle_max_sites) {
    std::vector<std::size_t> order = a;
    order.push_back(b.front());
    const DensityMatrix moved(permute_qubits(rho.entries(), order, n),
                              {std::size_t{1} << (n - 1), 2}, DensityMatrix::Check::structure);
    out.oracle_checked = true;
    out.oracle_discord = discord_numeric_general(moved, options.oracle).discord;
    out.discord_ok = out.oracle_discord <= out.mutual_info + kAreaLawSlack;
  }
  return out;
}

}  // namespace

void validate(const LatticeHamiltonian& h) {
  if (h.n_sites < 2) throw ArgumentError("a lattice needs at least 2 sites");
  if (h.n_sites > kMaxSites) {
    std::ostringstream os;
    os << "dense diagonalization is limited to " << kMaxSites << " sites, got " << h.n_sites;
    throw ResourceError(os.str());
  }
  for (const auto& e : h.edges) {
    if (e.i >= e.j || e.j >= h.n_sites) throw ValidationError("edge must satisfy i < j < n");
    if (e.term.rows() != 4 || e.term.cols() != 4) throw ValidationError("edge terms must be 4x4");
    if (hermiticity_defect(e.term) > kHermitianTolerance)
      throw ValidationError("edge term is not Hermitian");
  }
}

LatticeHamiltonian build_chain_hamiltonian(const ModelSpec& m, std::size_t n, Geometry geometry,
                                           std::size_t grid_cols) {
  qdiscord::validate(m);
  if (n > kMaxSites) {
    std::ostringstream os;
    os << "dense diagonalization is limited to " << kMaxSites << " sites, got " << n;
    throw ResourceError(os.str());
  }
  if (n < 2) throw ArgumentError("a lattice needs at least 2 sites");
  const auto pairs = lattice_edges(n, geometry, grid_cols);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [i, j] : pairs) {
    ++degree[i];
    ++degree[j];
  }
  const auto terms = bond_terms(m);
  const CMatrix zi = kron(pauli::z(), pauli::identity());
  const CMatrix iz = kron(pauli::identity(), pauli::z());

  LatticeHamiltonian h;
  h.n_sites = n;
  h.geometry = geometry;
  h.grid_cols = geometry == Geometry::grid ? grid_cols : 0;
  for (const auto& [i, j] : pairs) {
    CMatrix t = terms.bond;
    if (terms.field != 0.0) {
      t -= zi * Complex(terms.field / static_cast<double>(degree[i]));
      t -= iz * Complex(terms.field / static_cast<double>(degree[j]));
    }
    h.edges.push_back({i, j, std::move(t)});
  }
  validate(h);
  return h;
}

CMatrix embed_operator(const CMatrix& op, std::span<const std::size_t> sites, std::size_t n) {
  const std::size_t k = sites.size();
  if (n > kMaxSites) throw ResourceError("embedding limited to 12 sites");
  if (op.rows() != (std::size_t{1} << k) || !op.square())
    throw DimensionError("operator size does not match the site count");
  std::size_t mask = 0;
  for (std::size_t s : sites) {
    if (s >= n) throw ArgumentError("site out of range");
    const std::size_t bit = std::size_t{1} << bit_of(s, n);
    if (mask & bit) throw ArgumentError("repeated site");
    mask |= bit;
  }
  auto spread = [&](std::size_t sub) {
    std::size_t x = 0;
    for (std::size_t p = 0; p < k; ++p)
      if ((sub >> (k - 1 - p)) & 1U) x |= std::size_t{1} << bit_of(sites[p], n);
    return x;
  };
  auto gather = [&](std::size_t x) {
    std::size_t sub = 0;
    for (std::size_t p = 0; p < k; ++p)
      sub = (sub << 1) | ((x >> bit_of(sites[p], n)) & 1U);
    return sub;
  };
  const std::size_t dim = std::size_t{1} << n;
  CMatrix out(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t rest = x & ~mask;
    const std::size_t sx = gather(x);
    for (std::size_t sy = 0; sy < op.cols(); ++sy) out(x, rest | spread(sy)) = op(sx, sy);
  }
  return out;
}

RMatrix dense_hamiltonian(const LatticeHamiltonian& h) {
  validate(h);
  const std::size_t n = h.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  RMatrix out(dim, dim);
  for (const auto& e : h.edges) {
    if (!is_real(e.term)) throw UnsupportedError("complex edge terms are not supported");
    const std::size_t bi = std::size_t{1} << bit_of(e.i, n);
    const std::size_t bj = std::size_t{1} << bit_of(e.j, n);
    for (std::size_t x = 0; x < dim; ++x) {
      const std::size_t sx = ((x & bi) ? 2U : 0U) | ((x & bj) ? 1U : 0U);
      const std::size_t rest = x & ~(bi | bj);
      for (std::size_t sy = 0; sy < 4; ++sy) {
        const double v = e.term(sx, sy).real();
        if (v == 0.0) continue;
        const std::size_t y = rest | ((sy & 2U) ? bi : 0U) | ((sy & 1U) ? bj : 0U);
        out(x, y) += v;
      }
    }
  }
  return out;
}

double Spectrum::ground_energy() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks)
    if (!b.values.empty()) e = std::min(e, b.values.front());
  return e;
}

std::vector<double> Spectrum::values() const {
  std::vector<double> v;
  for (const auto& b : blocks) v.insert(v.end(), b.values.begin(), b.values.end());
  std::sort(v.begin(), v.end());
  return v;
}

Spectrum diagonalize(const LatticeHamiltonian& h, bool parallel) {
  const RMatrix dense = dense_hamiltonian(h);
  const std::size_t dim = dense.rows();

  std::vector<std::size_t> parent(dim);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = x + 1; y < dim; ++y)
      if (dense(x, y) != 0.0) {
        const std::size_t rx = find(x), ry = find(y);
        if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
      }

  std::vector<std::size_t> block_of(dim, dim);
  Spectrum out;
  out.n_sites = h.n_sites;
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t root = find(x);
    if (block_of[root] == dim) {
      block_of[root] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.blocks[block_of[root]].basis.push_back(x);
  }

  for (auto& block : out.blocks) {
    const std::size_t d = block.basis.size();
    RMatrix sub(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sub(i, j) = dense(block.basis[i], block.basis[j]);
    auto r = parallel ? kernels::jacobi_round_robin(std::move(sub))
                      : kernels::jacobi_cyclic(std::move(sub));
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t p, std::size_t q) { return r.values[p] < r.values[q]; });
    block.values.resize(d);
    block.vectors = RMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      block.values[k] = r.values[order[k]];
      for (std::size_t i = 0; i < d; ++i) block.vectors(i, k) = r.vectors(i, order[k]);
    }
  }
  return out;
}

std::vector<std::vector<double>> boltzmann_weights(const Spectrum& s, double beta) {
  require_beta(beta);
  const double e0 = s.ground_energy();
  const double tol = 1e-10 * std::max(1.0, std::abs(e0));
  std::vector<std::vector<double>> w;
  double z = 0.0;
  for (const auto& b : s.blocks) {
    std::vector<double> wb(b.values.size());
    for (std::size_t k = 0; k < wb.size(); ++k) {
      const double gap = b.values[k] - e0;
      if (std::isinf(beta))
        wb[k] = gap <= tol ? 1.0 : 0.0;
      else
        wb[k] = std::exp(-beta * gap);
      z += wb[k];
    }
    w.push_back(std::move(wb));
  }
  for (auto& wb : w)
    for (double& v : wb) v /= z;
  return w;
}

DensityMatrix thermal_state(const Spectrum& s, double beta) {
  const auto weights = boltzmann_weights(s, beta);
  const std::size_t dim = std::size_t{1} << s.n_sites;
  CMatrix rho(dim, dim);
  for (std::size_t k = 0; k < s.blocks.size(); ++k) {
    const auto& b = s.blocks[k];
    const auto& w = weights[k];
    const auto d = static_cast<std::ptrdiff_t>(b.basis.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < d; ++i) {
      for (std::ptrdiff_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t m = 0; m < w.size(); ++m)
          if (w[m] != 0.0) acc += b.vectors(i, m) * w[m] * b.vectors(j, m);
        rho(b.basis[i], b.basis[j]) = acc;
      }
    }
  }
  return DensityMatrix(std::move(rho), std::vector<std::size_t>(s.n_sites, 2),
                       DensityMatrix::Check::structure);
}

DensityMatrix thermal_state(const LatticeHamiltonian& h, double beta) {
  return thermal_state(diagonalize(h), beta);
}

double thermal_entropy(const Spectrum& s, double beta) {
  double e = 0.0;
  for (const auto& wb : boltzmann_weights(s, beta))
    for (double v : wb)
      if (v > 0.0) e -= v * std::log(v);
  return e;
}

std::vector<std::size_t> boundary_edges(const LatticeHamiltonian& h,
                                        std::span<const std::size_t> cut) {
  const auto a = validated_cut(cut, h.n_sites);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < h.edges.size(); ++k) {
    const bool ia = std::binary_search(a.begin(), a.end(), h.edges[k].i);
    const bool ja = std::binary_search(a.begin(), a.end(), h.edges[k].j);
    if (ia != ja) out.push_back(k);
  }
  return out;
}

double area_law_bound(const LatticeHamiltonian& h, std::span<const std::size_t> cut, double beta) {
  require_beta(beta);
  const auto edges = boundary_edges(h, cut);
  if (edges.empty() || beta == 0.0) return 0.0;
  double norm = 0.0;
  for (std::size_t e : edges) norm = std::max(norm, frobenius_norm(h.edges[e].term));
  if (std::isinf(beta)) return norm > 0.0 ? beta : 0.0;
  return 2.0 * beta * static_cast<double>(edges.size()) * norm;
}

AreaLawCheck check_area_law(const LatticeHamiltonian& h, std::span<const std::size_t> cut,
                            double beta, const AreaLawOptions& options) {
  return check_area_law(h, diagonalize(h), cut, beta, options);
}

AreaLawCheck check_area_law(const LatticeHamiltonian& h, const Spectrum& s,
                            std::span<const std::size_t> cut, double beta,
                            const AreaLawOptions& options) {
  return check_with_state(h, s, thermal_state(s, beta), cut, beta, options);
}

std::vector<std::vector<std::size_t>> contiguous_cuts(std::size_t n) {
  std::vector<std::vector<std::size_t>> cuts;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b <= n; ++b) {
      if (a == 0 && b == n) continue;
      std::vector<std::size_t> c(b - a);
      std::iota(c.begin(), c.end(), a);
      cuts.push_back(std::move(c));
    }
  return cuts;
}

std::vector<AreaLawCheck> area_law_sweep(const LatticeHamiltonian& h,
                                         std::span<const double> betas,
                                         const std::vector<std::vector<std::size_t>>& cuts,
                                         const AreaLawOptions& options, bool parallel) {
  const Spectrum s = diagonalize(h, parallel);
  std::vector<DensityMatrix> states;
  states.reserve(betas.size());
  for (double beta : betas) states.push_back(thermal_state(s, beta));

  const std::size_t total = betas.size() * cuts.size();
  std::vector<std::optional<AreaLawCheck>> out(total);
  std::vector<std::exception_ptr> errors(total);
  AreaLawOptions inner = options;
  if (parallel) inner.oracle.parallel = false;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(total); ++t) {
    const std::size_t bi = static_cast<std::size_t>(t) / cuts.size();
    const std::size_t ci = static_cast<std::size_t>(t) % cuts.size();
    try {
      out[t] = check_with_state(h, s, states[bi], cuts[ci], betas[bi], inner);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<AreaLawCheck> checks;
  checks.reserve(total);
  for (auto& c : out) checks.push_back(std::move(*c));
  return checks;
}

double half_chain_mutual_information(const ModelSpec& m, std::size_t n, double beta) {
  const auto h = build_chain_hamiltonian(m, n, Geometry::open_chain);
  std::vector<std::size_t> cut(n / 2);
  std::iota(cut.begin(), cut.end(), std::size_t{0});
  AreaLawOptions options;
  options.oracle_max_sites = 0;
  return check_area_law(h, cut, beta, options).mutual_info;
}

}  // namespace qdiscord
