#include "maxsusy/sugra.hpp"

#include <atomic>
#include <mutex>
#include <random>
#include <thread>

#include "maxsusy/errors.hpp"
#include "maxsusy/linalg.hpp"

namespace maxsusy {

namespace {

// Overall sign of Omega relative to the spin-connection term, fixed by
// requiring the maximal pp-wave to be exactly D-flat with F = +3 dx- ^ dx123.
const RingElem kOmegaSign(Rational(1));

RingMatrix ring_of(const RationalSquare& m) {
  RingMatrix r(m.size(), std::vector<RingElem>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m[i][j].is_zero()) r[i][j] = RingElem(m[i][j]);
  return r;
}

FormField raise_frame(const FormField& f, const MetricField& g) {
  return change_basis(f, ring_of(g.frame_metric_inverse()), Basis::Frame);
}

RingElem contract(const FormField& a, const FormField& raised_b) {
  RingElem s;
  for (const auto& [m, c] : a.components()) {
    auto it = raised_b.components().find(m);
    if (it != raised_b.components().end()) s += c * it->second;
  }
  return s;
}

// Frame components of the coordinate vector d_i.
std::vector<RingElem> frame_direction(const MetricField& g, int i) {
  std::vector<RingElem> x(g.dim());
  for (int a = 0; a < g.dim(); ++a) x[a] = g.coframe()[a][i];
  return x;
}

std::vector<RingElem> apply_matrix(const SpinorMatrix& m, std::span<const RingElem> v) {
  std::vector<RingElem> out(SpinorMatrix::N);
  for (int i = 0; i < SpinorMatrix::N; ++i)
    for (int j = 0; j < SpinorMatrix::N; ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

// 1/2 sum_{a<b} omega_i,ab c(e^a ^ e^b) = 1/4 omega_i,ab Gamma^a Gamma^b
SpinorMatrix spinor_connection(const Background& bg, const RingMatrix& omega_i) {
  SpinorMatrix m(bg.chart());
  int n = bg.metric().dim();
  const RingElem half(Rational(1, 2));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!omega_i[a][b].is_zero())
        m.add_scaled(bg.rep().basis_action((IndexMask{1} << a) | (IndexMask{1} << b)), omega_i[a][b] * half);
  return m;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t range) { return rng() % range; }

}  // namespace

std::shared_ptr<const GammaRep> gamma_rep_for(const RationalSquare& frame_metric) {
  static std::mutex mu;
  static std::vector<std::pair<RationalSquare, std::shared_ptr<const GammaRep>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& [eta, rep] : cache)
    if (eta == frame_metric) return rep;
  auto rep = std::make_shared<const GammaRep>(build_gamma(frame_metric));
  cache.emplace_back(frame_metric, rep);
  return rep;
}

std::shared_ptr<const SymplecticForm> symplectic_for(const RationalSquare& frame_metric) {
  static std::mutex mu;
  static std::vector<std::pair<RationalSquare, std::shared_ptr<const SymplecticForm>>> cache;
  auto rep = gamma_rep_for(frame_metric);
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& [eta, s] : cache)
    if (eta == frame_metric) return s;
  auto s = std::make_shared<const SymplecticForm>(build_symplectic(*rep));
  cache.emplace_back(frame_metric, s);
  return s;
}

Background::Background(MetricField metric, FormField flux, BackgroundMeta meta)
    : metric_(std::move(metric)), meta_(std::move(meta)) {
  if (metric_.dim() != GammaRep::kDim)
    throw Error(ErrorKind::InvalidInput, "background chart must be 11-dimensional");
  if (flux.degree() != 4) throw Error(ErrorKind::DegreeMismatch, "flux must be a 4-form");
  flux_ = metric_.to_coordinate(flux);
  flux_frame_ = metric_.to_frame(flux);
  rep_ = gamma_rep_for(metric_.frame_metric());
  symplectic_ = symplectic_for(metric_.frame_metric());
}

bool Background::flux_closed() const { return exterior_derivative(flux_).is_zero(); }

RingMatrix stress_tensor(const Background& bg) {
  const MetricField& g = bg.metric();
  int n = g.dim();
  std::vector<FormField> iF, iF_up;
  for (int i = 0; i < n; ++i) {
    auto x = frame_direction(g, i);
    iF.push_back(interior(std::span<const RingElem>(x), bg.flux_frame()));
    iF_up.push_back(raise_frame(iF.back(), g));
  }
  RingElem norm = contract(bg.flux_frame(), raise_frame(bg.flux_frame(), g));
  const RingElem half(Rational(1, 2)), sixth(Rational(1, 6));
  RingMatrix t(n, std::vector<RingElem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RingElem v = half * contract(iF[i], iF_up[j]);
      if (!norm.is_zero() && !g.g(i, j).is_zero()) v -= sixth * g.g(i, j) * norm;
      t[i][j] = t[j][i] = v;
    }
  return t;
}

RingMatrix einstein_residual(const Background& bg, const Curvature& cur) {
  RingMatrix t = stress_tensor(bg);
  int n = bg.metric().dim();
  RingMatrix r(n, std::vector<RingElem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = cur.ricci[i][j] - t[i][j];
  return r;
}

RingMatrix einstein_residual(const Background& bg) {
  return einstein_residual(bg, riemann_ricci_scalar(bg.metric()));
}

MaxwellResidual maxwell_residual(const Background& bg) {
  FormField star = hodge_star(bg.flux(), bg.metric());
  FormField eom = exterior_derivative(star) - wedge(bg.flux(), bg.flux()) * RingElem(Rational(1, 2));
  return {eom, exterior_derivative(bg.flux())};
}

SpinorMatrix omega(const Background& bg, int direction) {
  const MetricField& g = bg.metric();
  int n = g.dim();
  auto x = frame_direction(g, direction);
  FormField xflat(g.chart(), 1, Basis::Frame);
  for (int b = 0; b < n; ++b) {
    RingElem s;
    for (int a = 0; a < n; ++a)
      if (!g.frame_metric()[b][a].is_zero() && !x[a].is_zero()) s += RingElem(g.frame_metric()[b][a]) * x[a];
    xflat.add(IndexMask{1} << b, s);
  }
  SpinorMatrix out(g.chart());
  if (bg.flux_frame().is_zero()) return out;
  out += clifford_action(wedge(xflat, bg.flux_frame()), bg.rep()) * RingElem(Rational(1, 12));
  out -= clifford_action(interior(std::span<const RingElem>(x), bg.flux_frame()), bg.rep()) *
         RingElem(Rational(1, 6));
  return out * kOmegaSign;
}

namespace {

SpinorMatrix connection_from(const Background& bg, const std::vector<RingMatrix>& w, int i) {
  return spinor_connection(bg, w[i]) - omega(bg, i);
}

}  // namespace

SpinorMatrix connection_matrix(const Background& bg, int direction) {
  return connection_from(bg, spin_connection(bg.metric()), direction);
}

int SuperCurvature::index(int i, int j) const {
  // pairs (i, j), i < j, lexicographic
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

const SpinorMatrix& SuperCurvature::stored(int i, int j) const { return mats_.at(index(i, j)); }

SpinorMatrix SuperCurvature::R(int i, int j) const {
  if (i == j) return SpinorMatrix(mats_.empty() ? nullptr : mats_.front().chart());
  if (i < j) return stored(i, j);
  return stored(j, i) * RingElem(Rational(-1));
}

bool SuperCurvature::is_zero() const {
  for (const auto& m : mats_)
    if (!m.is_zero()) return false;
  return true;
}

SuperCurvature supercurvature(const Background& bg, unsigned threads) {
  int n = bg.metric().dim();
  auto w = spin_connection(bg.metric());
  std::vector<SpinorMatrix> conn(n);
  for (int i = 0; i < n; ++i) conn[i] = connection_from(bg, w, i);

  SuperCurvature rc;
  rc.n_ = n;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  rc.mats_.resize(pairs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t p; (p = next.fetch_add(1)) < pairs.size();) {
      auto [i, j] = pairs[p];
      SpinorMatrix r = conn[j].derivative(i);
      r -= conn[i].derivative(j);
      r += commutator(conn[i], conn[j]);
      rc.mats_[p] = std::move(r);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(pairs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rc;
}

std::vector<std::vector<Rational>> sample_points(const ChartPtr& chart, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> pts;
  int periodic = chart->periodic() ? chart->periodic()->var : -1;
  for (int s = 0; s < samples; ++s) {
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      std::vector<Rational> x(chart->dim());
      for (int i = 0; i < chart->dim(); ++i) {
        if (i == periodic) continue;
        auto num = static_cast<std::int64_t>(draw(rng, 11)) - 5;
        auto den = static_cast<std::int64_t>(draw(rng, 4)) + 1;
        x[i] = Rational(num, den);
      }
      ok = true;
      for (const auto& f : chart->factors())
        if (f.evaluate(std::span<const Rational>(x)).is_zero()) ok = false;
      if (ok) pts.push_back(std::move(x));
    }
    if (!ok) throw Error(ErrorKind::NoAdmissiblePoint, "sampling kept hitting denominator zeros");
  }
  return pts;
}

SusyCount susy_count(const Background& bg, const SuperCurvature& rc, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidInput, "samples must be positive");
  SusyCount out;
  out.is_maximal = rc.is_zero();
  if (out.is_maximal) {
    out.upper_bound = SpinorMatrix::N;
    return out;
  }
  linalg::SparseEchelon ech;
  for (const auto& x : sample_points(bg.chart(), samples, seed)) {
    std::span<const Rational> pt(x);
    for (int i = 0; i < rc.dim() && ech.rank() < SpinorMatrix::N; ++i)
      for (int j = i + 1; j < rc.dim() && ech.rank() < SpinorMatrix::N; ++j) {
        const SpinorMatrix& r = rc.stored(i, j);
        for (int row = 0; row < SpinorMatrix::N; ++row) {
          linalg::SparseVec v;
          for (int col = 0; col < SpinorMatrix::N; ++col)
            if (!r(row, col).is_zero()) {
              Rational q = r(row, col).evaluate(pt);
              if (!q.is_zero()) v[col] = q;
            }
          if (!v.empty()) ech.insert(std::move(v));
        }
      }
  }
  out.upper_bound = SpinorMatrix::N - static_cast<int>(ech.rank());
  return out;
}

SusyCount susy_count(const Background& bg, int samples, std::uint64_t seed) {
  return susy_count(bg, supercurvature(bg), samples, seed);
}

std::vector<RingElem> dilatino_residual(const Background& bg, const VectorField& xi,
                                        std::span<const RingElem> eps) {
  FormField dxi = bg.metric().to_frame(exterior_derivative(bg.metric().flat(xi)));
  SpinorMatrix m = clifford_action(dxi, bg.rep()) * RingElem(Rational(1, 4));
  return apply_matrix(m, eps);
}

std::vector<RingElem> spin_lie_derivative(const Background& bg, const VectorField& xi,
                                          std::span<const RingElem> eps) {
  auto w = spin_connection(bg.metric());
  std::vector<RingElem> out = dilatino_residual(bg, xi, eps);
  int n = bg.metric().dim();
  for (int i = 0; i < n; ++i) {
    if (xi.comps[i].is_zero()) continue;
    std::vector<RingElem> d(SpinorMatrix::N);
    for (int k = 0; k < SpinorMatrix::N; ++k)
      if (eps[k].depends_on(i)) d[k] = eps[k].derivative(i);
    auto rot = apply_matrix(spinor_connection(bg, w[i]), eps);
    for (int k = 0; k < SpinorMatrix::N; ++k) {
      RingElem t = d[k] + rot[k];
      if (!t.is_zero()) out[k] += xi.comps[i] * t;
    }
  }
  return out;
}

namespace {

using ModMatrix = std::vector<std::uint64_t>;  // 32x32 row-major over F_p

ModMatrix mod_commutator(const ModMatrix& a, const ModMatrix& b) {
  constexpr int N = SpinorMatrix::N;
  using E = linalg::ModpEchelon;
  ModMatrix c(N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::uint64_t ab = 0, ba = 0;
      for (int k = 0; k < N; ++k) {
        ab += E::mul(a[i * N + k], b[k * N + j]);
        ba += E::mul(b[i * N + k], a[k * N + j]);
      }
      c[i * N + j] = E::reduce(E::reduce(ab) + E::kPrime - E::reduce(ba));
    }
  return c;
}

}  // namespace

HolonomyProbe holonomy_probe(const Background& bg, const SuperCurvature& rc, int samples, int cap,
                             std::uint64_t seed) {
  constexpr int N = SpinorMatrix::N;
  using E = linalg::ModpEchelon;
  HolonomyProbe out;
  if (rc.is_zero()) return out;
  const RationalMatrix& C = bg.symplectic().C;
  E ech(N * N);
  std::vector<ModMatrix> gens;
  for (const auto& x : sample_points(bg.chart(), samples, seed)) {
    std::span<const Rational> pt(x);
    for (int i = 0; i < rc.dim(); ++i)
      for (int j = i + 1; j < rc.dim(); ++j) {
        RationalMatrix r = rc.stored(i, j).evaluate(pt);
        if (r.is_zero()) continue;
        if (!out.symplectic_violation && !(r.transpose() * C + C * r).is_zero()) out.symplectic_violation = true;
        ModMatrix m(N * N);
        for (int k = 0; k < N * N; ++k) m[k] = *r(k / N, k % N).mod(E::kPrime);
        if (ech.insert(m)) gens.push_back(std::move(m));
      }
  }
  // Bracket new elements with the generators until nothing new appears.
  std::vector<ModMatrix> frontier = gens;
  for (int round = 0; round < cap && !frontier.empty() && ech.rank() < N * N; ++round) {
    std::vector<ModMatrix> fresh;
    for (const auto& x : frontier) {
      for (const auto& y : gens) {
        ModMatrix z = mod_commutator(x, y);
        if (ech.insert(z)) fresh.push_back(std::move(z));
        if (ech.rank() == N * N) break;
      }
      if (ech.rank() == N * N) break;
    }
    frontier = std::move(fresh);
  }
  out.dim_lower_bound = static_cast<int>(ech.rank());
  return out;
}

HolonomyProbe holonomy_probe(const Background& bg, int samples, int cap, std::uint64_t seed) {
  return holonomy_probe(bg, supercurvature(bg), samples, cap, seed);
}

}  // namespace maxsusy
