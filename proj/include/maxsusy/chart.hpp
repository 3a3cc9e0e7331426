#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxsusy/poly.hpp"
#include "maxsusy/rational.hpp"

namespace maxsusy {

struct PeriodicVariable {
  int var = -1;
  Rational base_frequency;  // positive; admissible frequencies are k * base
};

// A single coordinate chart: the variable names, the polynomials allowed to
// appear in denominators, and at most one periodic variable whose
// trigonometric functions may appear in coefficients.
class Chart {
 public:
  Chart(std::vector<std::string> variables, std::vector<Poly> factors = {},
        std::optional<PeriodicVariable> periodic = std::nullopt);

  int dim() const { return static_cast<int>(variables_.size()); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::string& variable(int i) const { return variables_.at(i); }
  int index_of(const std::string& name) const;  // -1 if absent

  const std::vector<Poly>& factors() const { return factors_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  int factor_index(const Poly& p) const;  // -1 if not registered

  const std::optional<PeriodicVariable>& periodic() const { return periodic_; }

  bool same_as(const Chart& other) const;

 private:
  std::vector<std::string> variables_;
  std::vector<Poly> factors_;
  std::optional<PeriodicVariable> periodic_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> variables, std::vector<Poly> factors = {},
                           std::optional<PeriodicVariable> periodic = std::nullopt) {
  return std::make_shared<const Chart>(std::move(variables), std::move(factors),
                                       std::move(periodic));
}

}  // namespace maxsusy
