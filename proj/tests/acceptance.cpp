// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Exits non-zero if any criterion fails or overruns its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fd_oracle.hpp"
#include "generators.hpp"
#include "iia_fixtures.hpp"
#include "maxsusy/backgrounds.hpp"
#include "maxsusy/clifford.hpp"
#include "maxsusy/exprlang.hpp"
#include "maxsusy/io.hpp"
#include "maxsusy/kaluza.hpp"

using namespace maxsusy;
using namespace maxsusy::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what;
    ok = ok && cond;
  }
};

bool all_zero(const RingMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

RationalMatrix I32() { return RationalMatrix::identity(32); }

// --- 1

void gamma_suite(Outcome& o) {
  int relations = 0;
  for (const auto& eta : {minkowski_frame_metric(), lightcone_frame_metric()}) {
    GammaRep rep = build_gamma(eta);
    for (int a = 0; a < 11; ++a)
      for (int b = a; b < 11; ++b) {
        RationalMatrix ac = rep.gamma(a) * rep.gamma(b) + rep.gamma(b) * rep.gamma(a);
        o.require(ac == Rational(2) * rep.inverse_metric()[a][b] * I32(), "anticommutator");
        ++relations;
      }
    RationalMatrix vol(32);
    for (const auto& e : rep.basis_action((1u << 11) - 1)) vol(e.row, e.col) = e.value;
    o.require(vol == I32(), "volume element");
    // build_symplectic throws unless the solution space is one-dimensional
    SymplecticForm s = build_symplectic(rep);
    o.require(s.C.transpose() == Rational(-1) * s.C, "C antisymmetric");
    for (int a = 0; a < 11; ++a) {
      RationalMatrix cg = s.C * rep.gamma(a);
      o.require(cg.transpose() == cg, "C Gamma symmetric");
    }
  }
  GammaRep diag = build_gamma(minkowski_frame_metric());
  RationalMatrix prod = I32();
  for (int a = 0; a < 11; ++a) prod = prod * diag.gamma(a);
  o.require(prod == I32(), "Gamma^0...Gamma^10 = +1");
  o.note << relations / 2 << " relations per frame, symplectic form unique";
}

// --- 2

void flat_solution(Outcome& o) {
  auto bg = minkowski11();
  auto cur = riemann_ricci_scalar(bg.metric());
  o.require(all_zero(einstein_residual(bg, cur)), "einstein");
  o.require(maxwell_residual(bg).holds(), "maxwell");
  auto rc = supercurvature(bg);
  auto sc = susy_count(bg, rc, 3);
  o.require(sc.is_maximal && sc.upper_bound == 32, "susy count");
  auto hp = holonomy_probe(bg, rc, 2, 4);
  o.require(hp.dim_lower_bound == 0 && !hp.symplectic_violation, "holonomy");
  o.note << "susy (" << sc.is_maximal << ", " << sc.upper_bound << "), holonomy (" << hp.dim_lower_bound << ", "
         << hp.symplectic_violation << ")";
}

// --- 3

void pp_wave(Outcome& o) {
  auto bg = maximal_cw();
  auto cur = riemann_ricci_scalar(bg.metric());
  auto T = stress_tensor(bg);
  o.require(all_zero(einstein_residual(bg, cur)), "einstein");
  o.require(cur.ricci[1][1] == RingElem(Rational(9, 2)), "Ric_-- = 9/2");
  o.require(T[1][1] == RingElem(Rational(9, 2)), "T_-- = 9/2");
  auto mr = maxwell_residual(bg);
  o.require(mr.eom.is_zero() && mr.closure.is_zero(), "maxwell");
  auto rc = supercurvature(bg);
  o.require(rc.pair_count() == 55, "55 pairs");
  int zero = 0;
  for (int i = 0; i < 11; ++i)
    for (int j = i + 1; j < 11; ++j) zero += rc.stored(i, j).is_zero();
  o.require(zero == 55, "supercurvature");
  auto sc = susy_count(bg, rc, 3);
  o.require(sc.is_maximal && sc.upper_bound == 32, "susy count");
  o.note << "Ric_-- = " << expr::emit(cur.ricci[1][1]) << " = T_--, " << zero << "/55 curvatures zero";
}

// --- 4

void uniqueness_scan(Outcome& o) {
  std::vector<io::GridBlock> grid = {io::parse_block("3:-2:-1/2:1/8"), io::parse_block("6:-1:-1/8:1/8")};
  auto lines = io::scan_cw(grid, Rational(3), 3, 0);
  int maximal = 0;
  io::json where;
  for (const auto& l : lines)
    if (l.value("maximal", false)) {
      ++maximal;
      where = l.at("block_values");
    }
  o.require(lines.size() == 13 * 8, "grid size");
  o.require(maximal == 1, "exactly one maximal point");
  o.require(where == io::json::array({"-1", "-1/4"}), "at (-1, -1/4)");
  o.note << lines.size() << " points, " << maximal << " maximal at " << where.dump();
}

// --- 5

void freund_rubin_pair(Outcome& o) {
  struct Case {
    FreundRubinKind kind;
    Rational s;
    int split;
    Rational first, second;
  };
  const Case cases[] = {
      {FreundRubinKind::AdS4xS7, Rational(-6), 4, Rational(8) * Rational(-6), Rational(-7) * Rational(-6)},
      {FreundRubinKind::AdS7xS4, Rational(6), 7, Rational(-7) * Rational(6), Rational(8) * Rational(6)},
  };
  for (const auto& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    auto bg = freund_rubin(c.kind, c.s);
    auto cur = riemann_ricci_scalar(bg.metric());
    o.require(all_zero(einstein_residual(bg, cur)), "einstein");
    o.require(maxwell_residual(bg).holds(), "maxwell");
    auto [a, b] = block_scalars(bg.metric(), cur, c.split);
    // the 4d factor comes first on AdS4xS7 and second on AdS7xS4: 8s and -7s
    o.require(a == RingElem(c.first) && b == RingElem(c.second), "factor scalars");
    o.require(cur.scalar == RingElem(c.s), "total scalar");
    o.require(supercurvature(bg).is_zero(), "supercurvature");
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(sec < 600, "each under 10 min");
    o.note << bg.meta().kind << " s=" << c.s.str() << ": R = " << expr::emit(a) << " + " << expr::emit(b) << " (" << sec
           << " s); ";
  }
}

// --- 6

void negative_controls(Outcome& o) {
  auto d = maximal_cw_data();
  d.lambda[0] += Rational(1, 100);
  auto bg = cahen_wallach(d);
  o.require(!all_zero(einstein_residual(bg)), "perturbed eigenvalue breaks Einstein");
  auto sc = susy_count(bg, 3);
  o.require(sc.upper_bound < 32, "perturbed eigenvalue bound < 32");
  auto m = maximal_cw_data();
  m.mu = Rational(2);
  auto bm = cahen_wallach(m);
  o.require(!supercurvature(bm).is_zero(), "mu = 2 breaks D-flatness");
  o.note << "perturbed bound " << sc.upper_bound << ", mu=2 bound " << susy_count(bm, 3).upper_bound;
}

// --- 7

void isometries(Outcome& o) {
  auto kb = cw_killing_basis(maximal_cw_data());
  o.require(kb.fields.size() == 38, "38 fields");
  for (const auto& f : kb.fields) o.require(all_zero(killing_check(f, kb.background.metric())), "Killing residual");
  auto r = constant_rank(kb.fields);
  o.require(r == 38, "rank 38");
  o.note << kb.fields.size() << " fields, rank " << r;
}

// --- 8

void lie_algebra(Outcome& o) {
  auto check = [&](const std::vector<Rational>& lam) {
    auto g = cw_lie_algebra(lam);
    o.require(g.jacobi_holds(), "Jacobi");
    o.require(g.symmetric_split_holds(), "symmetric split");
    o.require(g.second_derived_central(), "second derived ideal central");
  };
  check(maximal_cw_data().lambda);
  Rng rng(50);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> l(9);
    for (auto& x : l) x = random_nonzero_rational(rng, 6, 4);
    check(l);
  }
  o.note << "A_* and 50 random eigenvalue vectors";
}

// --- 9

void iia_reduction(Outcome& o) {
  auto d = reduce(minkowski11(), 10);
  o.require(d.dilaton_exp == RingElem(Rational(1)), "dilaton_exp = 1");
  o.require(d.A1.is_zero() && d.H3.is_zero() && d.G4.is_zero(), "A, H, G vanish");
  Rng rng(20);
  int same = 0;
  for (int t = 0; t < 20; ++t) {
    auto x = random_iia(rng);
    same += reduce(oxidize(x), x.fiber_coord) == x;
  }
  o.require(same == 20, "round trips");
  o.note << "flat reduces to constant dilaton, " << same << "/20 round trips exact";
}

// --- 10

struct Blades {
  std::vector<Rational> c = std::vector<Rational>(1 << 11);
};

// product in the abstract algebra on blades e_S, e_0^2 = -1, e_b^2 = +1
Blades blade_product(const Blades& x, const Blades& y) {
  Blades out;
  for (unsigned a = 0; a < (1u << 11); ++a) {
    if (x.c[a].is_zero()) continue;
    for (unsigned b = 0; b < (1u << 11); ++b) {
      if (y.c[b].is_zero()) continue;
      int swaps = 0;
      for (unsigned m = b; m; m &= m - 1) swaps += __builtin_popcount(a >> (__builtin_ctz(m) + 1));
      bool neg = swaps & 1;
      if (a & b & 1u) neg = !neg;
      Rational v = x.c[a] * y.c[b];
      out.c[a ^ b] += neg ? -v : v;
    }
  }
  return out;
}

void oracles(Outcome& o) {
  long double worst = 0;
  int points = 0;
  for (const auto& bg : {minkowski11(), maximal_cw(), perturbed_cw(), freund_rubin(FreundRubinKind::AdS4xS7, Rational(-6)),
                         freund_rubin(FreundRubinKind::AdS7xS4, Rational(6))}) {
    const auto& g = bg.metric();
    Christoffel gam = christoffel(g);
    Curvature cur = riemann_ricci_scalar(g, gam);
    for (const auto& p : sample_points(bg.chart(), 5, 10)) {
      std::vector<long double> x;
      for (const auto& q : p) x.push_back(q.to_long_double());
      auto eval = [&](const std::vector<RingElem>& v) {
        std::vector<long double> out;
        for (const auto& r : v) out.push_back(r.evaluate(std::span<const long double>(x)));
        return out;
      };
      FdCurvature fd = fd_curvature(g, x);
      long double dg = relative_deviation(eval(gam.v), fd.gamma);
      long double dr = relative_deviation(eval(cur.riemann), fd.riemann);
      worst = std::max({worst, dg, dr});
      ++points;
    }
  }
  o.require(worst < 1e-6L, "finite differences within 1e-6");

  GammaRep rep = build_gamma(minkowski_frame_metric());
  auto blade_matrix = [&](unsigned m) {
    RationalMatrix r = I32();
    for (int b = 0; b < 11; ++b)
      if ((m >> b) & 1) r = r * rep.orthonormal_gamma(b);
    return r;
  };
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 6), gen(0, 10);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    RationalMatrix direct = I32();
    Blades abstract;
    abstract.c[0] = Rational(1);
    for (int i = len(rng); i > 0; --i) {
      int k = gen(rng);
      direct = direct * rep.orthonormal_gamma(k);
      Blades e;
      e.c[1u << k] = Rational(1);
      abstract = blade_product(abstract, e);
    }
    RationalMatrix via(32);
    for (unsigned m = 0; m < (1u << 11); ++m)
      if (!abstract.c[m].is_zero()) via += abstract.c[m] * blade_matrix(m);
    agree += via == direct;
  }
  o.require(agree == 100, "Clifford products");
  o.note << points << " points, worst relative deviation " << static_cast<double>(worst) << "; " << agree
         << "/100 gamma products exact";
}

// --- 11

void symplectic_violation(Outcome& o) {
  auto hp = holonomy_probe(perturbed_cw(), 2, 6, 5);
  o.require(hp.symplectic_violation, "violation");
  o.require(hp.dim_lower_bound > 496, "dimension > 496");
  o.note << "cw-perturbed: violation " << hp.symplectic_violation << ", dimension >= " << hp.dim_lower_bound;
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 = none
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const Criterion all[] = {
      {"gamma-matrix suite", 1, gamma_suite},
      {"flat solution", 10, flat_solution},
      {"maximal pp-wave", 120, pp_wave},
      {"uniqueness scan", 1800, uniqueness_scan},
      {"Freund-Rubin", 1200, freund_rubin_pair},
      {"negative controls", 0, negative_controls},
      {"isometry dimension", 60, isometries},
      {"Lie algebra", 0, lie_algebra},
      {"IIA reduction", 0, iia_reduction},
      {"oracle agreement", 0, oracles},
      {"symplectic violation", 0, symplectic_violation},
  };
  int failed = 0, k = 0;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "threw: " << e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && sec >= c.budget_s) {
      o.ok = false;
      o.note << " (over the " << c.budget_s << " s budget)";
    }
    failed += !o.ok;
    std::printf("%s %2d %-22s %8.2f s  %s\n", o.ok ? "PASS" : "FAIL", ++k, c.name, sec, o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria pass\n", k - failed, k);
  return failed ? 1 : 0;
}
