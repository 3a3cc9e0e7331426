#include "maxsusy/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include "maxsusy/errors.hpp"
#include "maxsusy/exprlang.hpp"

namespace maxsusy::io {

const char* const kEngineVersion = MAXSUSY_VERSION;
const char* const kConventionsHash = MAXSUSY_CONVENTIONS_SHA256;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::string as_text(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  bad(std::string(what) + " must be a string or integer");
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_rational(item));
  return out;
}

// --- charts

ChartPtr chart_from_json(const json& doc, int expected_dim) {
  const json& vars = field(doc, "chart");
  if (!vars.is_array()) bad("\"chart\" must be a list of variable names");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) bad("variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  if (static_cast<int>(names.size()) != expected_dim)
    bad("chart must have " + std::to_string(expected_dim) + " variables");
  auto bare = make_chart(names);
  std::vector<Poly> factors;
  if (doc.contains("denominators"))
    for (const auto& d : doc.at("denominators")) {
      RingElem p = expr::parse(as_text(d, "denominator"), bare);
      if (!p.is_polynomial()) bad("denominators must be polynomials");
      factors.push_back(p.numerator_poly());
    }
  std::optional<PeriodicVariable> per;
  if (doc.contains("periodic") && !doc.at("periodic").is_null()) {
    const json& p = doc.at("periodic");
    int var = bare->index_of(as_text(field(p, "var"), "periodic var"));
    if (var < 0) bad("periodic variable is not in the chart");
    Rational w = parse_rational(as_text(field(p, "base_frequency"), "base_frequency"));
    if (w.sign() <= 0) bad("base_frequency must be positive");
    per = PeriodicVariable{var, w};
  }
  return make_chart(names, factors, per);
}

void chart_to_json(const ChartPtr& c, json& out) {
  out["chart"] = c->variables();
  json dens = json::array();
  for (const auto& f : c->factors()) dens.push_back(expr::emit(f, c->variables()));
  out["denominators"] = dens;
  if (c->periodic())
    out["periodic"] = {{"var", c->variable(c->periodic()->var)},
                       {"base_frequency", c->periodic()->base_frequency.str()}};
  else
    out["periodic"] = nullptr;
}

// --- matrices and forms

RingMatrix coframe_from_json(const json& rows, const ChartPtr& c) {
  int n = c->dim();
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) bad("\"metric\" must have one coframe row per variable");
  RingMatrix e(n, std::vector<RingElem>(n));
  for (int a = 0; a < n; ++a) {
    if (!rows[a].is_array() || static_cast<int>(rows[a].size()) != n) bad("coframe rows must have one entry per variable");
    for (int i = 0; i < n; ++i) e[a][i] = expr::parse(as_text(rows[a][i], "coframe entry"), c);
  }
  return e;
}

RationalSquare square_from_json(const json& rows, int n) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) bad("\"frame_metric\" must be square of the chart size");
  RationalSquare m(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a) {
    if (!rows[a].is_array() || static_cast<int>(rows[a].size()) != n) bad("\"frame_metric\" must be square");
    for (int b = 0; b < n; ++b) m[a][b] = parse_rational(as_text(rows[a][b], "frame_metric entry"));
  }
  return m;
}

json coframe_to_json(const MetricField& g) {
  json rows = json::array();
  for (const auto& row : g.coframe()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(expr::emit(x));
    rows.push_back(r);
  }
  return rows;
}

json square_to_json(const RationalSquare& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.str());
    rows.push_back(r);
  }
  return rows;
}

FormField form_from_json(const json& list, const ChartPtr& c, int degree, Basis basis) {
  FormField f(c, degree, basis);
  if (list.is_null()) return f;
  if (!list.is_array()) bad("form must be a list of {indices, coeff}");
  for (const auto& entry : list) {
    const json& idx = field(entry, "indices");
    if (!idx.is_array() || static_cast<int>(idx.size()) != degree)
      bad("form entry must have " + std::to_string(degree) + " indices");
    std::vector<int> ids;
    for (const auto& i : idx) {
      int k = -1;
      if (i.is_string()) k = c->index_of(i.get<std::string>());
      else if (i.is_number_integer()) k = i.get<int>();
      if (k < 0 || k >= c->dim()) bad("form index out of range: " + i.dump());
      ids.push_back(k);
    }
    f.add(std::span<const int>(ids), expr::parse(as_text(field(entry, "coeff"), "coeff"), c));
  }
  return f;
}

json form_to_json(const FormField& f) {
  json list = json::array();
  for (const auto& [m, c] : f.components()) {
    json idx = json::array();
    for (int i : mask_indices(m)) idx.push_back(f.chart()->variable(i));
    list.push_back({{"indices", idx}, {"coeff", expr::emit(c)}});
  }
  return list;
}

Params params_from_json(const json& doc) {
  Params p;
  if (doc.contains("params") && !doc.at("params").is_null()) {
    if (!doc.at("params").is_object()) bad("\"params\" must be an object");
    for (const auto& [k, v] : doc.at("params").items()) {
      if (v.is_string()) p[k] = v.get<std::string>();
      else if (v.is_number_integer()) p[k] = std::to_string(v.get<std::int64_t>());
      else if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + as_text(v[i], "parameter entry");
        p[k] = s;
      } else {
        bad("parameter " + k + " must be a string, integer or list");
      }
    }
  }
  return p;
}

json meta_json(const BackgroundMeta& m) {
  json p = json::object();
  for (const auto& [k, v] : m.params) p[k] = v;
  return p;
}

void check_params(const std::string& kind, const Params& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) bad("catalog kind " + kind + " has no parameter " + k);
  }
}

std::string required(const Params& p, const char* key, const std::string& kind) {
  auto it = p.find(key);
  if (it == p.end()) bad("catalog kind " + kind + " needs parameter " + key);
  return it->second;
}

std::optional<CWData> cw_data_of(const Background& bg) {
  const auto& m = bg.meta();
  if (m.kind != "cw" && m.kind != "cw-max") return std::nullopt;
  CWData d;
  for (const auto& [k, v] : m.params) {
    if (k == "lambda") d.lambda = parse_list(v);
    if (k == "mu") d.mu = parse_rational(v);
  }
  return d;
}

using Clock = std::chrono::steady_clock;

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t += ch;
  auto q = Rational::parse(t);
  if (!q) bad("not a rational number: \"" + text + "\"");
  return *q;
}

// ------------------------------------------------------------------ catalog

Background catalog_background(const std::string& kind, const Params& p) {
  if (kind == "flat") {
    check_params(kind, p, {});
    return minkowski11();
  }
  if (kind == "cw-max") {
    check_params(kind, p, {});
    return maximal_cw();
  }
  if (kind == "cw-perturbed") {
    check_params(kind, p, {});
    return perturbed_cw();
  }
  if (kind == "cw") {
    check_params(kind, p, {"lambda", "mu"});
    CWData d;
    d.lambda = parse_list(required(p, "lambda", kind));
    d.mu = p.count("mu") ? parse_rational(p.at("mu")) : Rational(3);
    if (d.mu.sign() < 0) bad("mu must be non-negative");
    return cahen_wallach(d);
  }
  if (kind == "ads4xs7" || kind == "ads7xs4") {
    check_params(kind, p, {"s"});
    Rational s = parse_rational(required(p, "s", kind));
    return freund_rubin(kind == "ads4xs7" ? FreundRubinKind::AdS4xS7 : FreundRubinKind::AdS7xS4, s);
  }
  bad("unknown catalog kind \"" + kind + "\"");
}

json catalog_listing() {
  json list = json::array();
  auto entry = [&](const char* kind, const char* description, json params) {
    list.push_back({{"kind", kind}, {"description", description}, {"params", std::move(params)}});
  };
  entry("flat", "Minkowski space R^{1,10} with F = 0", json::array());
  entry("cw", "Cahen-Wallach pp-wave 2dx+dx- + (sum lambda_i x_i^2) dx-^2 + |dx|^2, F = mu dx- ^ dx1 ^ dx2 ^ dx3",
        json::array({{{"name", "lambda"}, {"type", "rational list"}, {"constraint", "9 nonzero entries"}},
                     {{"name", "mu"}, {"type", "rational"}, {"constraint", "mu >= 0"}, {"default", "3"}}}));
  entry("cw-max", "the maximally supersymmetric pp-wave: lambda = (-1 x3, -1/4 x6), mu = 3", json::array());
  entry("cw-perturbed", "non-solution: cw-max with dx4 ^ dx5 ^ dx6 ^ dx7 added to the flux", json::array());
  entry("ads4xs7", "Freund-Rubin AdS4 x S7, flux sqrt(6|s|) dvol(AdS4)",
        json::array({{{"name", "s"}, {"type", "rational"}, {"constraint", "s < 0 and 6|s| a rational square"}}}));
  entry("ads7xs4", "Freund-Rubin AdS7 x S4, flux sqrt(6s) dvol(S4)",
        json::array({{{"name", "s"}, {"type", "rational"}, {"constraint", "s > 0 and 6s a rational square"}}}));
  return list;
}

// ------------------------------------------------------------------ files

Background background_from_json(const json& doc) {
  std::string type = as_text(field(doc, "type"), "type");
  if (type == "catalog") return catalog_background(as_text(field(doc, "kind"), "kind"), params_from_json(doc));
  if (type != "custom") bad("background type must be \"catalog\" or \"custom\"");
  ChartPtr c = chart_from_json(doc, GammaRep::kDim);
  RingMatrix e = coframe_from_json(field(doc, "metric"), c);
  RationalSquare eta = square_from_json(field(doc, "frame_metric"), c->dim());
  Basis basis = Basis::Coordinate;
  if (doc.contains("flux_basis")) {
    std::string b = as_text(doc.at("flux_basis"), "flux_basis");
    if (b == "frame") basis = Basis::Frame;
    else if (b != "coordinate") bad("flux_basis must be \"coordinate\" or \"frame\"");
  }
  FormField f = form_from_json(doc.contains("flux") ? doc.at("flux") : json(), c, 4, basis);
  BackgroundMeta meta;
  if (doc.contains("kind")) meta.kind = as_text(doc.at("kind"), "kind");
  for (const auto& [k, v] : params_from_json(doc)) meta.params.emplace_back(k, v);
  return Background(MetricField(c, e, eta), f, meta);
}

json background_to_json(const Background& bg) {
  json out;
  out["schema"] = "maxsusy/background/v1";
  out["type"] = "custom";
  out["kind"] = bg.meta().kind;
  chart_to_json(bg.chart(), out);
  out["metric"] = coframe_to_json(bg.metric());
  out["frame_metric"] = square_to_json(bg.metric().frame_metric());
  out["flux_basis"] = "coordinate";
  out["flux"] = form_to_json(bg.flux());
  out["params"] = meta_json(bg.meta());
  return out;
}

IIAData iia_from_json(const json& doc) {
  if (as_text(field(doc, "type"), "type") != "iia") bad("IIA file must have type \"iia\"");
  IIAData d;
  ChartPtr c = chart_from_json(doc, GammaRep::kDim - 1);
  d.chart10 = c;
  d.h = MetricField(c, coframe_from_json(field(doc, "metric"), c), square_from_json(field(doc, "frame_metric"), c->dim()));
  d.dilaton_exp = expr::parse(as_text(field(doc, "dilaton_exp"), "dilaton_exp"), c);
  d.A1 = form_from_json(doc.contains("A1") ? doc.at("A1") : json(), c, 1, Basis::Coordinate);
  d.H3 = form_from_json(doc.contains("H3") ? doc.at("H3") : json(), c, 3, Basis::Coordinate);
  d.G4 = form_from_json(doc.contains("G4") ? doc.at("G4") : json(), c, 4, Basis::Coordinate);
  if (!exterior_derivative(d.H3).is_zero()) bad("H3 is not closed");
  const json& fb = field(doc, "fiber");
  d.fiber_var = as_text(field(fb, "var"), "fiber var");
  d.fiber_coord = field(fb, "coord").get<int>();
  d.fiber_frame = field(fb, "frame").get<int>();
  return d;
}

json iia_to_json(const IIAData& d) {
  json out;
  out["schema"] = "maxsusy/iia/v1";
  out["type"] = "iia";
  chart_to_json(d.chart10, out);
  out["metric"] = coframe_to_json(d.h);
  out["frame_metric"] = square_to_json(d.h.frame_metric());
  out["dilaton_exp"] = expr::emit(d.dilaton_exp);
  out["A1"] = form_to_json(d.A1);
  out["H3"] = form_to_json(d.H3);
  out["G4"] = form_to_json(d.G4);
  out["fiber"] = {{"var", d.fiber_var}, {"coord", d.fiber_coord}, {"frame", d.fiber_frame}};
  return out;
}

json error_json(const std::exception& e) {
  json err;
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["kind"] = std::string(error_kind_name(pe->kind()));
    err["message"] = pe->detail();
    err["line"] = pe->line();
    err["column"] = pe->column();
  } else if (const auto* me = dynamic_cast<const Error*>(&e)) {
    err["kind"] = std::string(error_kind_name(me->kind()));
    err["message"] = me->detail();
  } else {
    err["kind"] = "InvalidInput";
    err["message"] = e.what();
  }
  return {{"schema", "maxsusy/error/v1"}, {"error", err}};
}

// ------------------------------------------------------------------ verify

VerifyResult verify(const Background& bg, const VerifyOptions& opt) {
  json timings = json::object();
  auto t = Clock::now();
  auto lap = [&](const char* stage) {
    auto now = Clock::now();
    timings[stage] = std::chrono::duration_cast<std::chrono::milliseconds>(now - t).count();
    t = now;
  };
  const MetricField& g = bg.metric();
  const auto& vars = bg.chart()->variables();

  Curvature cur = riemann_ricci_scalar(g);
  RingMatrix er = einstein_residual(bg, cur);
  json nonzero = json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i; j < g.dim(); ++j)
      if (!er[i][j].is_zero()) nonzero.push_back({{"i", vars[i]}, {"j", vars[j]}, {"residual", expr::emit(er[i][j])}});
  bool einstein = nonzero.empty();
  lap("einstein");

  MaxwellResidual mr = maxwell_residual(bg);
  bool closed = mr.closure.is_zero();
  lap("maxwell");

  SuperCurvature rc = supercurvature(bg, opt.threads);
  lap("supercurvature");
  SusyCount sc = susy_count(bg, rc, opt.samples, opt.seed);
  lap("susy");

  json rep;
  rep["schema"] = "maxsusy/report/v1";
  rep["engine_version"] = kEngineVersion;
  rep["conventions_sha256"] = kConventionsHash;
  rep["background"] = {{"kind", bg.meta().kind}, {"params", meta_json(bg.meta())}};
  rep["einstein"] = {{"holds", einstein}, {"nonzero_components", nonzero}};
  rep["maxwell"] = {{"holds", mr.eom.is_zero()}};
  rep["flux_closed"] = closed;
  rep["scalar_curvature"] = expr::emit(cur.scalar);
  rep["susy"] = {{"maximal", sc.is_maximal}, {"upper_bound", sc.upper_bound},
                 {"samples", opt.samples}, {"seed", opt.seed}};

  if (opt.killing) {
    auto d = cw_data_of(bg);
    if (!d) bad("--killing needs a cw or cw-max catalog background");
    KillingBasis kb = cw_killing_basis(*d);
    bool all = true;
    for (const auto& f : kb.fields)
      for (const auto& row : killing_check(f, kb.background.metric()))
        for (const auto& x : row) all = all && x.is_zero();
    rep["killing_dim"] = all ? static_cast<int>(constant_rank(kb.fields)) : 0;
    lap("killing");
  }
  if (opt.holonomy) {
    HolonomyProbe hp = holonomy_probe(bg, rc, opt.holonomy_samples, opt.holonomy_cap, opt.seed);
    rep["holonomy"] = {{"dim_lower_bound", hp.dim_lower_bound},
                       {"symplectic_violation", hp.symplectic_violation},
                       {"samples", opt.holonomy_samples}, {"cap", opt.holonomy_cap}};
    lap("holonomy");
  }
  bool ok = einstein && mr.eom.is_zero() && closed && sc.is_maximal;
  rep["verified"] = ok;
  if (opt.timings) rep["timings_ms"] = timings;
  return {rep, ok};
}

// ------------------------------------------------------------------ scan

GridBlock parse_block(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) bad("grid block must be size:start:stop:step, got \"" + text + "\"");
  GridBlock b;
  try {
    b.size = std::stoi(parts[0]);
  } catch (const std::exception&) {
    bad("grid block size is not an integer: \"" + parts[0] + "\"");
  }
  b.start = parse_rational(parts[1]);
  b.stop = parse_rational(parts[2]);
  b.step = parse_rational(parts[3]);
  if (b.size <= 0) bad("grid block size must be positive");
  if (b.step.sign() <= 0) bad("grid step must be positive");
  return b;
}

std::vector<json> scan_cw(const std::vector<GridBlock>& blocks, const Rational& mu, int samples,
                          std::uint64_t seed, unsigned threads) {
  int total = 0;
  for (const auto& b : blocks) total += b.size;
  if (!blocks.empty() && total != 9) bad("grid blocks must cover 9 eigenvalues, got " + std::to_string(total));
  std::vector<std::vector<Rational>> axes;
  for (const auto& b : blocks) {
    std::vector<Rational> v;
    for (Rational x = b.start; x <= b.stop; x += b.step) v.push_back(x);
    axes.push_back(std::move(v));
  }
  std::size_t count = blocks.empty() ? 0 : 1;
  for (const auto& a : axes) count *= a.size();

  std::vector<json> out(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t p; (p = next.fetch_add(1)) < count && !failed;) {
      try {
        std::vector<Rational> values(axes.size()), lambda;
        std::size_t rest = p;
        for (std::size_t k = axes.size(); k-- > 0;) {
          values[k] = axes[k][rest % axes[k].size()];
          rest /= axes[k].size();
        }
        for (std::size_t k = 0; k < blocks.size(); ++k)
          for (int r = 0; r < blocks[k].size; ++r) lambda.push_back(values[k]);
        json line;
        line["index"] = p;
        json bv = json::array();
        for (const auto& v : values) bv.push_back(v.str());
        line["block_values"] = bv;
        line["mu"] = mu.str();
        bool degenerate = std::any_of(values.begin(), values.end(), [](const Rational& v) { return v.is_zero(); });
        line["degenerate"] = degenerate;
        if (degenerate) {
          line["skipped"] = true;
        } else {
          ModuliForm m = moduli_canonicalize(lambda);
          json dir = json::array();
          for (const auto& x : m.direction) dir.push_back(x.str());
          line["moduli"] = {{"direction", dir}, {"norm_sq", m.norm_sq.str()}};
          Background bg = cahen_wallach(CWData{lambda, mu});
          SuperCurvature rc = supercurvature(bg, 1);
          SusyCount sc = susy_count(bg, rc, samples, seed);
          line["maximal"] = sc.is_maximal;
          line["upper_bound"] = sc.upper_bound;
        }
        out[p] = std::move(line);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace maxsusy::io
