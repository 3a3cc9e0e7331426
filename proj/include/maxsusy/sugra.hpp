#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "maxsusy/chartgeom.hpp"
#include "maxsusy/clifford.hpp"

namespace maxsusy {

struct BackgroundMeta {
  std::string kind = "custom";
  // catalog parameters as exact strings, in insertion order
  std::vector<std::pair<std::string, std::string>> params;
};

// Candidate solution (chart, metric, 4-form flux). The flux is stored in
// the coordinate basis. Closure is checked by maxwell_residual rather than
// enforced here, so that broken inputs can still be reported on.
class Background {
 public:
  Background(MetricField metric, FormField flux, BackgroundMeta meta = {});

  const ChartPtr& chart() const { return metric_.chart(); }
  const MetricField& metric() const { return metric_; }
  const FormField& flux() const { return flux_; }
  const FormField& flux_frame() const { return flux_frame_; }
  const GammaRep& rep() const { return *rep_; }
  const SymplecticForm& symplectic() const { return *symplectic_; }
  const BackgroundMeta& meta() const { return meta_; }

  bool flux_closed() const;

 private:
  MetricField metric_;
  FormField flux_, flux_frame_;
  std::shared_ptr<const GammaRep> rep_;
  std::shared_ptr<const SymplecticForm> symplectic_;
  BackgroundMeta meta_;
};

// Shared representation for an admissible frame metric (built once per
// distinct metric).
std::shared_ptr<const GammaRep> gamma_rep_for(const RationalSquare& frame_metric);
std::shared_ptr<const SymplecticForm> symplectic_for(const RationalSquare& frame_metric);

RingMatrix stress_tensor(const Background& bg);
RingMatrix einstein_residual(const Background& bg);
RingMatrix einstein_residual(const Background& bg, const Curvature& cur);

struct MaxwellResidual {
  FormField eom;      // d*F - 1/2 F^F
  FormField closure;  // dF
  bool holds() const { return eom.is_zero() && closure.is_zero(); }
};
MaxwellResidual maxwell_residual(const Background& bg);

SpinorMatrix omega(const Background& bg, int direction);
// Total connection matrix in direction i: 1/4 omega_i,ab Gamma^a Gamma^b - Omega_i.
SpinorMatrix connection_matrix(const Background& bg, int direction);

class SuperCurvature {
 public:
  int dim() const { return n_; }
  // R^D_ij, antisymmetric; R(i, i) is zero.
  SpinorMatrix R(int i, int j) const;
  const SpinorMatrix& stored(int i, int j) const;  // requires i < j
  bool is_zero() const;
  std::size_t pair_count() const { return mats_.size(); }

 private:
  friend SuperCurvature supercurvature(const Background& bg, unsigned threads);
  int index(int i, int j) const;
  int n_ = 0;
  std::vector<SpinorMatrix> mats_;  // pairs i < j in lexicographic order
};

// threads = 0 picks std::thread::hardware_concurrency().
SuperCurvature supercurvature(const Background& bg, unsigned threads = 0);

struct SusyCount {
  bool is_maximal = false;
  int upper_bound = 0;
};

// Random admissible rational sample points: the periodic variable (if any)
// is pinned to 0 so trigonometric factors stay exact. Throws
// NoAdmissiblePoint after repeated denominator zeros.
std::vector<std::vector<Rational>> sample_points(const ChartPtr& chart, int samples, std::uint64_t seed);

SusyCount susy_count(const Background& bg, const SuperCurvature& rc, int samples, std::uint64_t seed = 0);
SusyCount susy_count(const Background& bg, int samples, std::uint64_t seed = 0);

std::vector<RingElem> spin_lie_derivative(const Background& bg, const VectorField& xi,
                                          std::span<const RingElem> eps);
std::vector<RingElem> dilatino_residual(const Background& bg, const VectorField& xi,
                                        std::span<const RingElem> eps);

struct HolonomyProbe {
  int dim_lower_bound = 0;
  bool symplectic_violation = false;
};
HolonomyProbe holonomy_probe(const Background& bg, const SuperCurvature& rc, int samples, int cap,
                             std::uint64_t seed = 0);
HolonomyProbe holonomy_probe(const Background& bg, int samples, int cap, std::uint64_t seed = 0);

}  // namespace maxsusy
