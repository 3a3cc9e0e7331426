#include "maxsusy/kaluza.hpp"

#include "maxsusy/errors.hpp"

namespace maxsusy {

namespace {

// Index maps between an 11d chart and its 10d base with `theta` removed.
std::vector<int> down_map(int n, int theta) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i < theta ? i : (i == theta ? -1 : i - 1);
  return m;
}

std::vector<int> up_map(int n10, int theta) {
  std::vector<int> m(n10);
  for (int i = 0; i < n10; ++i) m[i] = i < theta ? i : i + 1;
  return m;
}

IndexMask map_mask(IndexMask m, std::span<const int> map) {
  IndexMask out = 0;
  for (int i : mask_indices(m)) out |= IndexMask{1} << map[i];
  return out;
}

FormField transfer_form(const FormField& f, const ChartPtr& target, std::span<const int> map, int sign_theta = -1) {
  FormField out(target, f.degree(), Basis::Coordinate);
  for (const auto& [m, c] : f.components()) {
    if (sign_theta >= 0 && (m >> sign_theta & 1)) throw Error(ErrorKind::InvalidInput, "form is not basic");
    // the maps are order preserving, so no reordering sign arises
    out.set(map_mask(m, map), c.transfer(target, map));
  }
  return out;
}

ChartPtr base_chart(const Chart& c, int theta) {
  auto map = down_map(c.dim(), theta);
  std::vector<std::string> vars;
  for (int i = 0; i < c.dim(); ++i)
    if (i != theta) vars.push_back(c.variable(i));
  std::vector<Poly> factors;
  for (const auto& f : c.factors())
    if (auto g = f.remap(map)) factors.push_back(*g);
  std::optional<PeriodicVariable> per;
  if (c.periodic() && c.periodic()->var != theta)
    per = PeriodicVariable{map[c.periodic()->var], c.periodic()->base_frequency};
  return make_chart(vars, factors, per);
}

void check_positive(const RingElem& x, const ChartPtr& chart, ErrorKind on_negative, const char* what) {
  if (!x.is_unit()) throw Error(ErrorKind::NotSpacelike, std::string(what) + " is not a unit");
  int pos = 0, neg = 0;
  for (const auto& p : sample_points(chart, 5, 0)) (x.evaluate(std::span<const Rational>(p)).sign() > 0 ? pos : neg)++;
  if (pos == 0) throw Error(on_negative, std::string(what) + " is negative");
  if (neg > 0) throw Error(ErrorKind::NotSpacelike, std::string(what) + " changes sign");
}

}  // namespace

bool operator==(const IIAData& a, const IIAData& b) {
  return a.chart10->same_as(*b.chart10) && a.h.coframe() == b.h.coframe() &&
         a.h.frame_metric() == b.h.frame_metric() && a.dilaton_exp == b.dilaton_exp && a.H3 == b.H3 &&
         a.A1 == b.A1 && a.G4 == b.G4 && a.fiber_var == b.fiber_var && a.fiber_coord == b.fiber_coord &&
         a.fiber_frame == b.fiber_frame;
}

IIAData reduce(const Background& bg, int theta) {
  const MetricField& g = bg.metric();
  int n = g.dim();
  if (theta < 0 || theta >= n) throw Error(ErrorKind::InvalidInput, "fiber coordinate out of range");
  const std::string& name = g.chart()->variable(theta);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (g.g(i, j).depends_on(theta))
        throw Error(ErrorKind::NotInvariant, "metric component (" + g.chart()->variable(i) + "," +
                                                 g.chart()->variable(j) + ") depends on " + name);
  for (const auto& [m, c] : bg.flux().components())
    if (c.depends_on(theta)) throw Error(ErrorKind::NotInvariant, "flux depends on " + name);

  RingElem gtt = g.g(theta, theta);
  check_positive(gtt, g.chart(), ErrorKind::TimelikeFiber, "fiber norm");

  int star = -1;
  for (int a = 0; a < n; ++a)
    if (!g.coframe()[a][theta].is_zero()) {
      if (star >= 0) throw Error(ErrorKind::NonAdaptedCoframe, "several coframe rows have a fiber component");
      star = a;
    }
  const auto& eta = g.frame_metric();
  for (int b = 0; b < n; ++b)
    if (!(eta[star][b] == Rational(b == star ? 1 : 0)))
      throw Error(ErrorKind::NonAdaptedCoframe, "fiber frame row is not orthonormal to the base");

  auto down = down_map(n, theta);
  ChartPtr c10 = base_chart(*g.chart(), theta);
  IIAData out;
  out.chart10 = c10;
  out.fiber_var = name;
  out.fiber_coord = theta;
  out.fiber_frame = star;
  out.dilaton_exp = gtt.transfer(c10, down);

  RingMatrix e10;
  RationalSquare eta10;
  for (int a = 0; a < n; ++a) {
    if (a == star) continue;
    std::vector<RingElem> row;
    std::vector<Rational> erow;
    for (int i = 0; i < n; ++i)
      if (i != theta) row.push_back(g.coframe()[a][i].transfer(c10, down));
    for (int b = 0; b < n; ++b)
      if (b != star) erow.push_back(eta[a][b]);
    e10.push_back(std::move(row));
    eta10.push_back(std::move(erow));
  }
  out.h = MetricField(c10, e10, eta10);

  // A_mu = g_theta,mu / g_theta,theta as an 11d one-form without dtheta
  FormField a11(g.chart(), 1, Basis::Coordinate);
  RingElem inv = gtt.inverse();
  for (int i = 0; i < n; ++i)
    if (i != theta && !g.g(theta, i).is_zero()) a11.set(IndexMask{1} << i, g.g(theta, i) * inv);
  FormField h11 = interior(VectorField::coordinate(g.chart(), theta), bg.flux());
  FormField omega11 = a11;
  omega11.add(IndexMask{1} << theta, RingElem(g.chart(), Rational(1)));
  FormField g11 = bg.flux() - wedge(omega11, h11);

  out.A1 = transfer_form(a11, c10, down, theta);
  out.H3 = transfer_form(h11, c10, down, theta);
  out.G4 = transfer_form(g11, c10, down, theta);
  return out;
}

Background oxidize(const IIAData& iia) {
  const ChartPtr& c10 = iia.chart10;
  int n10 = c10->dim(), n = n10 + 1, theta = iia.fiber_coord, star = iia.fiber_frame;
  if (n != GammaRep::kDim) throw Error(ErrorKind::InvalidInput, "base must be 10-dimensional");
  if (theta < 0 || theta >= n || star < 0 || star >= n)
    throw Error(ErrorKind::InvalidInput, "fiber position out of range");
  check_positive(iia.dilaton_exp, c10, ErrorKind::NotSpacelike, "dilaton exponential");

  auto up = up_map(n10, theta);
  std::vector<std::string> vars = c10->variables();
  vars.insert(vars.begin() + theta, iia.fiber_var);
  if (c10->index_of(iia.fiber_var) >= 0) throw Error(ErrorKind::InvalidInput, "fiber name clashes with base");
  std::vector<Poly> factors;
  for (const auto& f : c10->factors()) factors.push_back(*f.remap(up));
  std::optional<PeriodicVariable> per;
  if (c10->periodic()) per = PeriodicVariable{up[c10->periodic()->var], c10->periodic()->base_frequency};
  ChartPtr c = make_chart(vars, factors, per);

  RingElem f = iia.dilaton_exp.sqrt().transfer(c, up);
  FormField a = transfer_form(iia.A1, c, up);
  RingMatrix e(n, std::vector<RingElem>(n));
  RationalSquare eta(n, std::vector<Rational>(n));
  const auto& eta10 = iia.h.frame_metric();
  for (int a10 = 0; a10 < n10; ++a10) {
    int ra = a10 < star ? a10 : a10 + 1;
    for (int i = 0; i < n10; ++i) e[ra][up[i]] = iia.h.coframe()[a10][i].transfer(c, up);
    for (int b10 = 0; b10 < n10; ++b10) eta[ra][b10 < star ? b10 : b10 + 1] = eta10[a10][b10];
  }
  e[star][theta] = f;
  for (int i = 0; i < n10; ++i) e[star][up[i]] = f * a.component(IndexMask{1} << up[i]);
  eta[star][star] = Rational(1);

  FormField omega = a;
  omega.add(IndexMask{1} << theta, RingElem(c, Rational(1)));
  FormField flux = wedge(omega, transfer_form(iia.H3, c, up)) + transfer_form(iia.G4, c, up);
  if (!exterior_derivative(flux).is_zero())
    throw Error(ErrorKind::FluxNotClosed, "dG + dA ^ H does not vanish");
  return Background(MetricField(c, e, eta), flux, BackgroundMeta{"oxidized", {}});
}

}  // namespace maxsusy
