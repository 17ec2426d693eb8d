#include "orbitcensus/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbitcensus/words.hpp"

namespace orbitcensus::cli {

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string where(const std::string& path, const std::string& what) { return path + ": " + what; }

Rat coeff_rat(const Json& c, const std::string& path) {
  if (c.is_string()) return parse_rat(c.get<std::string>());
  if (c.is_number_integer()) return Rat(Int(std::to_string(c.get<long long>())));
  throw InputError(where(path, "coefficient must be a \"p/q\" string"));
}

UniPoly rat_poly(const Json& arr, const std::string& path) {
  if (!arr.is_array() || arr.empty()) throw InputError(where(path, "expected a nonempty coefficient array"));
  std::vector<Rat> cs;
  for (std::size_t i = 0; i < arr.size(); ++i) cs.push_back(coeff_rat(arr[i], path + "[" + std::to_string(i) + "]"));
  return UniPoly(std::move(cs));
}

NFPoly nf_poly(const Json& arr, const NFElem::Modulus& mod, const std::string& path) {
  if (!arr.is_array() || arr.empty()) throw InputError(where(path, "expected a nonempty coefficient array"));
  std::vector<NFElem> cs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (arr[i].is_array())
      cs.emplace_back(rat_poly(arr[i], p), mod);
    else
      cs.emplace_back(NFElem(rat_poly(Json::array({arr[i]}), p), mod));
  }
  return NFPoly(std::move(cs));
}

bool has_nested(const Json& arr) {
  if (!arr.is_array()) return false;
  for (const auto& c : arr)
    if (c.is_array()) return true;
  return false;
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where(path, std::string("missing field '") + key + "'"));
  return obj.at(key);
}

std::string field_name(const MapSet& s) {
  if (!s.over_number_field()) return "Q";
  return "Q[t]/(" + to_string(*s.modulus, "t") + ")";
}

std::string nf_map_string(const RatFn<NFElem>& f) {
  if (f.is_polynomial()) return to_string(f.num);
  return "(" + to_string(f.num) + ")/(" + to_string(f.den) + ")";
}

template <class R>
std::string bipoly_string(const BiPoly<R>& f) {
  std::string out;
  const auto& rows = f.rows();
  for (std::size_t j = rows.size(); j-- > 0;) {
    const auto& row = rows[j];
    for (std::size_t i = row.size(); i-- > 0;) {
      const R& c = row.coeffs()[i];
      if (coeff_is_zero(c)) continue;
      std::string mono;
      if (i > 0) mono += i == 1 ? "X" : "X^" + std::to_string(i);
      if (j > 0) mono += std::string(mono.empty() ? "" : "*") + (j == 1 ? "Y" : "Y^" + std::to_string(j));
      std::string cs = coeff_string(c);
      bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
      if (neg) cs = cs.substr(1);
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += cs + "*" + mono;
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

TargetEnclosure parse_target(const std::string& text, const Rat& width) {
  if (text.rfind("log", 0) == 0) {
    Int k = parse_int_expr(text.substr(3));
    if (k < 2) throw InputError("log target needs an integer >= 2: '" + text + "'");
    Interval L = log_enclosure(k, width);
    return {L.lower_rat(), L.upper_rat()};
  }
  Rat q = parse_rat(text);
  return {q, q};
}

std::string fmt(const Interval& x, int digits = 10) { return x.to_string(digits); }

void line(std::ostream& out, const std::string& key, const std::string& value) {
  out << "  " << std::left << std::setw(22) << key << value << "\n";
}

Json word_json(const Word& w, const std::vector<std::string>& names) { return word_to_string(w, names); }

std::vector<std::string> int_strings(const std::vector<Int>& v) {
  std::vector<std::string> out;
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

void RunConfig::validate() const {
  if (precision < 32) throw InputError("precision must be at least 32 bits");
  if (delta <= 0) throw InputError("delta must be positive");
  if (threads < 1) throw InputError("threads must be at least 1");
}

mpfr_prec_t precision_from_env(mpfr_prec_t fallback) {
  const char* v = std::getenv("ORBITCENSUS_PRECISION");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  long bits = std::strtol(v, &end, 10);
  if (*end != '\0') throw InputError(std::string("ORBITCENSUS_PRECISION is not an integer: '") + v + "'");
  return static_cast<mpfr_prec_t>(bits);
}

MapSet parse_map_set(const Json& j) {
  const Json& maps = field(j, "maps", "$");
  if (!maps.is_array() || maps.empty()) throw InputError("$.maps: expected a nonempty array");
  NFElem::Modulus mod;
  if (j.contains("modulus")) mod = make_modulus(rat_poly(j.at("modulus"), "$.modulus"));
  std::vector<EndoMap> qmaps;
  std::vector<RatFn<NFElem>> nfmaps;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string p = "$.maps[" + std::to_string(i) + "]";
    const Json& m = maps[i];
    std::string name = m.is_object() && m.contains("name") ? m.at("name").get<std::string>() : "phi" + std::to_string(i + 1);
    std::string type = m.is_object() && m.contains("type") ? m.at("type").get<std::string>() : "polynomial";
    if (type != "polynomial" && type != "rational") throw InputError(where(p + ".type", "unknown map type '" + type + "'"));
    names.push_back(name);
    if (mod) {
      NFPoly num = type == "polynomial" ? nf_poly(field(m, "coeffs", p), mod, p + ".coeffs")
                                        : nf_poly(field(m, "num", p), mod, p + ".num");
      NFPoly den = type == "polynomial" ? NFPoly(NFElem(UniPoly(Rat(1)), mod))
                                        : nf_poly(field(m, "den", p), mod, p + ".den");
      nfmaps.push_back(RatFn<NFElem>::make(num, den));
      if (nfmaps.back().degree() < 1) throw InputError(where(p, "a map needs degree at least 1"));
    } else {
      for (const char* key : {"coeffs", "num", "den"})
        if (m.is_object() && m.contains(key) && has_nested(m.at(key)))
          throw InputError(where(p + "." + key, "polynomial coefficients need a \"modulus\" field"));
      if (type == "polynomial")
        qmaps.push_back(EndoMap::polynomial(rat_poly(field(m, "coeffs", p), p + ".coeffs"), name));
      else
        qmaps.push_back(EndoMap::rational(rat_poly(field(m, "num", p), p + ".num"),
                                          rat_poly(field(m, "den", p), p + ".den"), name));
    }
  }
  if (mod) return MapSet::over_field(mod, std::move(nfmaps), std::move(names));
  return MapSet::over_q(std::move(qmaps));
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

MapSet load_map_set(const std::string& path) {
  try {
    return parse_map_set(load_json(path));
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

UniPoly parse_poly_file(const Json& j) { return rat_poly(field(j, "coeffs", "$"), "$.coeffs"); }

Json to_json(const Interval& x) {
  return Json{{"lo", x.lo_string()}, {"hi", x.hi_string()}, {"width", x.width()}};
}

Json to_json(const Rat& q) {
  Interval x(q);
  return Json{{"exact", to_string(q)}, {"lo", x.lo_string()}, {"hi", x.hi_string()}, {"width", 0.0}};
}

Json to_json(const RootEnclosure& r) {
  Interval x = r.interval();
  return Json{{"lo", x.lo_string()},
              {"hi", x.hi_string()},
              {"width", x.width()},
              {"lo_exact", to_string(r.lower)},
              {"hi_exact", to_string(r.upper)},
              {"multiplicity", r.multiplicity}};
}

Json to_json(const NFBiPoly& f) {
  Json grid = Json::array();
  NFElem::Modulus mod;
  for (const auto& row : f.rows()) {
    Json r = Json::array();
    for (const auto& c : row.coeffs()) {
      r.push_back(c.to_string("t"));
      if (c.modulus()) mod = c.modulus();
    }
    grid.push_back(std::move(r));
  }
  return Json{{"modulus", mod ? Json(to_string(*mod, "t")) : Json(nullptr)},
              {"grid", std::move(grid)},
              {"text", bipoly_string(f)}};
}

Json to_json(const RatBiPoly& f) {
  Json grid = Json::array();
  for (const auto& row : f.rows()) {
    Json r = Json::array();
    for (const auto& c : row.coeffs()) r.push_back(to_string(c));
    grid.push_back(std::move(r));
  }
  return Json{{"modulus", nullptr}, {"grid", std::move(grid)}, {"text", bipoly_string(f)}};
}

Json approx_json(const ApproxResult& a) {
  return Json{{"n", int_strings(a.n)},
              {"m", int_strings(a.m)},
              {"u", a.u.get_str()},
              {"delta", to_json(a.delta)},
              {"deformation_power", a.deformation_power},
              {"increasing", a.increasing},
              {"interleaved", a.interleaved},
              {"ordering_guaranteed", a.ordering_guaranteed}};
}

Json bound_report_json(const BoundReport& r) {
  Json j;
  j["schema"] = 1;
  j["degrees"] = r.degrees;
  j["approx"] = approx_json(r.approx);
  j["alpha1"] = to_json(r.alpha1);
  j["beta1"] = to_json(r.beta1);
  j["subdominant_available"] = r.subdominant_available;
  if (r.subdominant_available) {
    j["alpha2_modulus"] = r.alpha2_modulus;
    j["beta2_modulus"] = r.beta2_modulus;
  }
  j["simple_roots"] = r.simple_roots;
  j["r3"] = r.r3;
  j["r4"] = r.r4;
  const Interval* kap[] = {&r.kappa1, &r.kappa2, &r.kappa3, &r.kappa4, &r.kappa5, &r.kappa6};
  const Interval* tau[] = {&r.tau1, &r.tau2, &r.tau3, &r.tau4, &r.tau5, &r.tau6};
  for (int i = 0; i < 6; ++i) {
    bool sub = i == 2 || i == 5;
    j["kappa" + std::to_string(i + 1)] = sub && !r.subdominant_available ? Json(nullptr) : to_json(*kap[i]);
    j["tau" + std::to_string(i + 1)] = sub && !r.subdominant_available ? Json(nullptr) : to_json(*tau[i]);
  }
  j["C1"] = to_json(r.C1);
  j["C2"] = r.subdominant_available ? to_json(r.C2) : Json(nullptr);
  j["C3"] = to_json(r.C3);
  j["C4"] = r.subdominant_available ? to_json(r.C4) : Json(nullptr);
  j["b1"] = to_json(r.b1);
  j["b2"] = to_json(r.b2);
  j["a1"] = Json{{"formula", "kappa5/(h(P)+bS)^b1"}, {"numerator", to_json(r.kappa5)}};
  j["a2"] = Json{{"formula", "tau5/(h(P)-bS)^b2"}, {"numerator", to_json(r.tau5)}};
  j["validity_threshold"] = r.validity_threshold;
  j["gap_bound"] = to_json(r.gap_bound);
  j["crude_bound"] = to_json(r.crude_bound);
  return j;
}

Json set_constants_json(const SetConstants& c) {
  Json per = Json::array();
  for (const auto& q : c.per_map) per.push_back(to_json(q));
  return Json{{"dS", c.dS}, {"CS", to_json(c.CS)}, {"bS", to_json(c.bS)}, {"BS", to_json(c.BS())}, {"per_map", per}};
}

Json certificate_json(const FreenessCertificate& c, const MapSet& s) {
  Json w = Json::array();
  auto indep = [&](const char* kind, const IndependenceResult& r) {
    w.push_back(Json{{"kind", kind},
                     {"independent", r.independent},
                     {"exponents", int_strings(r.witness)},
                     {"basis", int_strings(r.basis)}});
  };
  if (c.degree_check) indep("degree_independence", *c.degree_check);
  if (c.coefficient_check) indep("coefficient_independence", *c.coefficient_check);
  if (c.critical) {
    Json prof = Json::array();
    for (const auto& p : c.critical->profiles)
      prof.push_back(Json{{"D", to_string(p.D, "t")},
                          {"infinity_ramification", p.infinity_ramification},
                          {"squarefree", p.squarefree}});
    Json pairs = Json::array();
    for (const auto& [a, b] : c.critical->colliding_pairs) pairs.push_back(Json::array({s.names[a], s.names[b]}));
    w.push_back(Json{{"kind", "critical_values"},
                     {"separate", c.critical->separate},
                     {"simple", c.critical->simple},
                     {"profiles", prof},
                     {"colliding_pairs", pairs}});
  }
  for (const auto& r : c.relations)
    w.push_back(Json{{"kind", "relation"}, {"lhs", word_json(r.lhs, s.names)}, {"rhs", word_json(r.rhs, s.names)}});
  return Json{{"verdict", to_string(c.verdict)}, {"criterion", to_string(c.criterion)}, {"witnesses", w}, {"notes", c.notes}};
}

namespace {

Json decomposition_json(const DecompositionReport& d) {
  if (!d.found) return Json{{"found", false}};
  Json j{{"found", true},
         {"n", d.n},
         {"innerKind", d.kind == InnerKind::cyclic ? "cyclic" : "chebyshev"},
         {"shift", to_string(d.shift)},
         {"a_squared", to_string(d.a_squared)},
         {"offset", to_string(d.offset)},
         {"inner", to_string(d.inner)},
         {"F", to_string(d.outer)}};
  auto L = d.rational_linear();
  j["L"] = L ? Json(to_string(*L)) : Json(nullptr);
  return j;
}

}  // namespace

Json factor_report_json(const FactorReport& r) {
  Json j;
  j["schema"] = 1;
  j["f"] = to_string(r.f);
  j["F"] = to_json(r.F);
  j["shift"] = to_string(r.shift);
  Json lin = Json::array();
  for (const auto& l : r.linear)
    lin.push_back(Json{{"order", l.order}, {"a", l.a.to_string("t")}, {"factor", to_json(l.factor)},
                       {"q_product", to_json(l.q_product)}, {"points_at_infinity", 1}});
  j["linear"] = lin;
  Json quad = Json::array();
  for (const auto& q : r.quadratic.factors)
    quad.push_back(Json{{"exponents", Json::array({q.exponent_plus, q.exponent_minus})},
                        {"s", q.s.to_string("t")},
                        {"p", q.p.to_string("t")},
                        {"k", q.k.to_string("t")},
                        {"factor", to_json(q.factor)},
                        {"q_product", q.q_product ? to_json(*q.q_product) : Json(nullptr)},
                        {"symmetric", q.symmetric},
                        {"points_at_infinity", q.points_at_infinity},
                        {"minus_case", q.minus_case},
                        {"plus_case", q.plus_case}});
  j["quadratic"] = quad;
  Json unres = Json::array();
  for (const auto& [a, b] : r.quadratic.unresolved) unres.push_back(Json::array({a, b}));
  j["unresolved"] = unres;
  j["cyclic"] = decomposition_json(r.cyclic);
  j["chebyshev"] = decomposition_json(r.chebyshev);
  j["F_points_at_infinity"] = r.F_points_at_infinity;
  j["no_small_factor"] = r.no_small_factor;
  j["consistent"] = r.consistent;
  return j;
}

namespace {

struct Common {
  RunConfig cfg;
  long precision_flag = 0;
  std::string delta_text;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--precision", c.precision_flag, "working precision in bits (>= 32)");
  sub->add_flag("--json", c.cfg.json, "machine-readable JSON output");
  sub->add_option("--digit-limit", c.cfg.digit_limit, "guard on coordinate sizes, in decimal digits");
}

void print_bounds_table(std::ostream& out, const BoundReport& r) {
  out << "bound constants (degrees";
  for (long d : r.degrees) out << " " << d;
  out << ")\n";
  std::string n, m;
  for (std::size_t i = 0; i < r.approx.n.size(); ++i) {
    n += (i ? "," : "") + r.approx.n[i].get_str();
    m += (i ? "," : "") + r.approx.m[i].get_str();
  }
  line(out, "n / m / u", n + " / " + m + " / " + r.approx.u.get_str());
  line(out, "delta", to_string(r.approx.delta));
  line(out, "alpha1", fmt(r.alpha1.interval(), 12));
  line(out, "beta1", fmt(r.beta1.interval(), 12));
  line(out, "b1", fmt(r.b1));
  line(out, "b2", fmt(r.b2));
  line(out, "kappa5 (a1 numerator)", fmt(r.kappa5));
  line(out, "tau5 (a2 numerator)", fmt(r.tau5));
  line(out, "a1", "kappa5/(h(P)+bS)^b1");
  line(out, "a2", "tau5/(h(P)-bS)^b2");
  line(out, "validity threshold", std::to_string(r.validity_threshold));
  line(out, "gap bound", fmt(r.gap_bound));
  line(out, "crude bound", fmt(r.crude_bound));
}

Interval parse_height_log(const Int& B) {
  if (B < 1) throw InputError("max height must be at least 1");
  return log_int(B);
}

int cmd_analyze(Common& c, const std::string& file, const std::string& fractions, std::ostream& out) {
  MapSet s = load_map_set(file);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.nf_maps[i].degree() < 2) throw PreconditionError("map " + s.names[i] + " has degree < 2");
  Json j;
  j["schema"] = 1;
  j["command"] = "analyze";
  j["field"] = field_name(s);
  Json maps = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    maps.push_back(Json{{"name", s.names[i]}, {"degree", s.nf_maps[i].degree()}, {"map", nf_map_string(s.nf_maps[i])}});
  j["maps"] = maps;
  FreenessCertificate cert = freeness_certificate(s, c.cfg.max_len);
  j["certificate"] = certificate_json(cert, s);
  std::optional<SetConstants> consts;
  if (!s.over_number_field()) {
    consts = set_constants(s.maps);
    j["set_constants"] = set_constants_json(*consts);
  } else {
    j["set_constants"] = nullptr;
  }
  std::vector<long> degrees = s.degrees();
  std::sort(degrees.begin(), degrees.end());
  bool distinct = std::adjacent_find(degrees.begin(), degrees.end()) == degrees.end();
  std::optional<BoundReport> report;
  std::vector<std::string> notes;
  if (s.size() < 2) {
    notes.push_back("single map: the orbit count follows the canonical-height window (see census)");
  } else if (!distinct) {
    notes.push_back("repeated degrees: the two-weight approximation needs distinct degrees, no bounds reported");
  } else {
    if (!fractions.empty()) {
      auto parts = split(fractions, ',');
      const std::size_t k = degrees.size();
      if (parts.size() != 2 * k + 1) throw InputError("--delta-fractions needs n_1..n_s,m_1..m_s,u");
      std::vector<Int> n, m;
      for (std::size_t i = 0; i < k; ++i) n.push_back(parse_int_expr(parts[i]));
      for (std::size_t i = 0; i < k; ++i) m.push_back(parse_int_expr(parts[k + i]));
      Int u = parse_int_expr(parts[2 * k]);
      if (u < 1) throw InputError("--delta-fractions: u must be positive");
      auto targets = log_targets(degrees, Rat(1, Int(1) << 80));
      report = build_bound_report(degrees, approximate_from_fractions(targets, n, m, u));
    } else {
      report = build_bound_report(degrees, c.cfg.delta);
    }
    j["bounds"] = bound_report_json(*report);
    if (cert.verdict != Verdict::free) notes.push_back("the bounds count words; they count maps only for a free monoid");
  }
  if (!report) j["bounds"] = nullptr;
  j["notes"] = notes;
  if (c.cfg.json) {
    emit(out, j);
    return 0;
  }
  out << "map set over " << field_name(s) << "\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    line(out, s.names[i], nf_map_string(s.nf_maps[i]) + "  (degree " + std::to_string(s.nf_maps[i].degree()) + ")");
  out << "freeness\n";
  line(out, "verdict", to_string(cert.verdict));
  line(out, "criterion", to_string(cert.criterion));
  for (const auto& r : cert.relations)
    line(out, "relation", word_to_string(r.lhs, s.names) + " = " + word_to_string(r.rhs, s.names));
  for (const auto& n : cert.notes) line(out, "note", n);
  if (consts) {
    out << "height constants\n";
    line(out, "d_S", std::to_string(consts->dS));
    line(out, "C_S", fmt(Interval(consts->CS)));
    line(out, "b_S", fmt(Interval(consts->bS)));
  }
  if (report) print_bounds_table(out, *report);
  for (const auto& n : notes) line(out, "note", n);
  return 0;
}

int cmd_census(Common& c, const std::string& file, const std::string& point, const std::string& height, bool enumerate,
               std::ostream& out) {
  MapSet s = load_map_set(file);
  if (s.over_number_field()) throw InputError("census needs a map set over Q");
  ProjPoint P = parse_point(point);
  Int B = parse_int_expr(height);
  Interval logB = parse_height_log(B);
  SetConstants consts = set_constants(s.maps);
  Json j;
  j["schema"] = 1;
  j["command"] = "census";
  j["point"] = P.to_string();
  j["max_height"] = B.get_str();
  j["set_constants"] = set_constants_json(consts);
  std::vector<std::string> violations;

  if (s.size() == 1) {
    SingleMapCount sc = single_map_count_bounds(s.maps[0], P, B, Rat(1, 1000000), c.cfg.digit_limit);
    j["mode"] = "single_map";
    j["preperiodic"] = sc.preperiodic;
    j["count"] = sc.exact_count.get_str();
    j["window_lower"] = sc.window_lower.get_str();
    j["window_upper"] = sc.window_upper.get_str();
    j["canonical_height"] = to_json(sc.canonical_height);
    j["c_phi"] = to_json(sc.c_phi);
    if (!sc.preperiodic && (sc.exact_count < sc.window_lower || sc.exact_count > sc.window_upper))
      violations.push_back("orbit count outside the canonical-height window");
    if (!c.cfg.json) {
      out << "single-map orbit census\n";
      line(out, "orbit points", sc.exact_count.get_str());
      line(out, "window", "[" + sc.window_lower.get_str() + ", " + sc.window_upper.get_str() + "]");
      line(out, "canonical height", fmt(sc.canonical_height));
      line(out, "c_phi", to_string(sc.c_phi));
      if (sc.preperiodic) line(out, "note", "P is preperiodic");
    }
  } else {
    Interval hP = weil_height(P).h;
    if (!certainly_less(Interval(consts.bS), hP))
      throw PreconditionError("h(P) = " + fmt(hP) + " must exceed b_S = " + fmt(Interval(consts.bS)) + " (H(P) > B_S = " +
                              fmt(consts.BS()) + ")");
    std::vector<long> degrees = s.degrees();
    std::sort(degrees.begin(), degrees.end());
    if (std::adjacent_find(degrees.begin(), degrees.end()) != degrees.end())
      throw PreconditionError("height-count bounds need distinct degrees");
    BoundReport rep = build_bound_report(degrees, c.cfg.delta);
    HeightCountBounds hc = height_count_bounds(rep, hP, logB, consts.bS);
    j["mode"] = "bounds";
    j["a1"] = to_json(hc.a1);
    j["a2"] = to_json(hc.a2);
    j["log_degree_lower"] = to_json(hc.log_degree_lower);
    j["log_degree_upper"] = to_json(hc.log_degree_upper);
    j["lower"] = hc.counts.lower_available ? to_json(hc.counts.lower) : Json(nullptr);
    j["upper"] = hc.counts.upper_available ? to_json(hc.counts.upper) : Json(nullptr);
    j["above_threshold"] = hc.counts.above_threshold;
    j["validity_threshold"] = rep.validity_threshold;
    j["b1"] = to_json(rep.b1);
    j["b2"] = to_json(rep.b2);
    if (!c.cfg.json) {
      out << "height-count bounds for #{f : H(f(P)) <= B}\n";
      line(out, "b1 / b2", fmt(rep.b1, 8) + " / " + fmt(rep.b2, 8));
      line(out, "a1 / a2", fmt(hc.a1, 8) + " / " + fmt(hc.a2, 8));
      line(out, "lower", hc.counts.lower_available ? fmt(hc.counts.lower) : "unavailable");
      line(out, "upper", hc.counts.upper_available ? fmt(hc.counts.upper) : "unavailable");
      line(out, "log-degree window", fmt(hc.log_degree_lower, 8) + " .. " + fmt(hc.log_degree_upper, 8));
      line(out, "threshold reached", hc.counts.above_threshold ? "yes" : "no");
    }
    if (enumerate) {
      OrbitCensus oc = orbit_census_enumerate(s.maps, P, B, consts, c.cfg.digit_limit);
      std::map<Int, Int> hist;
      for (const auto& [pt, mult] : oc.multiplicity) hist[mult] += 1;
      Json h = Json::array();
      for (const auto& [mult, cnt] : hist) h.push_back(Json{{"multiplicity", mult.get_str()}, {"points", cnt.get_str()}});
      j["function_count"] = oc.function_count.get_str();
      j["point_count"] = oc.point_count.get_str();
      j["multiplicity_histogram"] = h;
      j["words_visited"] = oc.words_visited.get_str();
      Interval cnt(oc.function_count);
      if (hc.counts.lower_available && certainly_less(cnt, hc.counts.lower))
        violations.push_back("enumerated count below the lower bound");
      if (hc.counts.upper_available && certainly_less(hc.counts.upper, cnt))
        violations.push_back("enumerated count above the upper bound");
      if (!c.cfg.json) {
        line(out, "function count", oc.function_count.get_str());
        line(out, "point count", oc.point_count.get_str());
        for (const auto& [mult, n] : hist) line(out, "multiplicity " + mult.get_str(), n.get_str() + " points");
      }
    }
  }
  j["violations"] = violations;
  if (c.cfg.json) emit(out, j);
  if (!violations.empty()) throw CheckFailure("sandwich violated: " + violations.front());
  if (!c.cfg.json) line(out, "sandwich", "ok");
  return 0;
}

int cmd_compositions(Common& c, const std::string& parts_text, long n, std::ostream& out) {
  std::vector<long> parts;
  for (const auto& p : split(parts_text, ',')) {
    Int v = parse_int_expr(p);
    if (v < 1 || !v.fits_slong_p()) throw InputError("parts must be positive integers");
    parts.push_back(v.get_si());
  }
  if (parts.empty()) throw InputError("--parts is empty");
  if (n < 0) throw InputError("--n must be nonnegative");
  Int count = count_exact(parts, n);
  DominantTerm dt = dominant_term(parts);
  Json j{{"schema", 1}, {"command", "compositions"}, {"parts", parts}, {"n", n}, {"count", count.get_str()},
         {"alpha1", to_json(dt.alpha)}, {"kappa1", to_json(dt.kappa)}};
  if (c.cfg.json) {
    emit(out, j);
    return 0;
  }
  line(out, "f_" + std::to_string(n), count.get_str());
  line(out, "dominant root", fmt(dt.alpha.interval(), 14));
  line(out, "kappa1", fmt(dt.kappa));
  return 0;
}

int cmd_approx(Common& c, const std::string& targets_text, std::ostream& out) {
  std::vector<TargetEnclosure> targets;
  auto texts = split(targets_text, ',');
  for (const auto& t : texts) targets.push_back(parse_target(t, c.cfg.delta / 16));
  ApproxResult a = approximate_with_gcd(targets, c.cfg.delta);
  bool ok = verify_approx(a, targets);
  Json j{{"schema", 1}, {"command", "approx"}, {"targets", texts}, {"result", approx_json(a)}, {"verified", ok}};
  if (c.cfg.json) emit(out, j);
  else {
    for (std::size_t i = 0; i < texts.size(); ++i)
      line(out, texts[i], a.n[i].get_str() + "/u < c < " + a.m[i].get_str() + "/u");
    line(out, "u", a.u.get_str());
    line(out, "deformation power", std::to_string(a.deformation_power));
    line(out, "verified", ok ? "yes" : "no");
  }
  if (!ok) throw CheckFailure("approximation failed verification");
  return 0;
}

int cmd_relations(Common& c, const std::string& file, std::size_t max_len, const std::string& cap, std::ostream& out) {
  MapSet s = load_map_set(file);
  RelationSearch rs = find_relations(s, max_len, parse_int_expr(cap));
  Json rel = Json::array();
  for (const auto& r : rs.relations) rel.push_back(Json{{"lhs", word_json(r.lhs, s.names)}, {"rhs", word_json(r.rhs, s.names)}});
  Json j{{"schema", 1}, {"command", "relations"}, {"field", field_name(s)}, {"max_len", max_len},
         {"relations", rel}, {"words_compared", rs.words_compared}, {"truncated", rs.truncated}};
  if (c.cfg.json) {
    emit(out, j);
    return 0;
  }
  for (const auto& r : rs.relations) line(out, "relation", word_to_string(r.lhs, s.names) + " = " + word_to_string(r.rhs, s.names));
  line(out, "relations", std::to_string(rs.relations.size()));
  line(out, "words compared", std::to_string(rs.words_compared));
  if (rs.truncated) line(out, "note", "some words exceeded the degree cap");
  return 0;
}

int cmd_curves(Common& c, const std::string& file, const std::string& expr, unsigned cheb, std::ostream& out) {
  int given = !file.empty() + !expr.empty() + (cheb > 0);
  if (given != 1) throw InputError("curves needs exactly one of FILE, --poly, --chebyshev");
  UniPoly f = !file.empty() ? parse_poly_file(load_json(file)) : !expr.empty() ? parse_poly(expr) : chebyshev_poly(cheb);
  FactorReport r = siegel_report(f);
  if (c.cfg.json) {
    Json j = factor_report_json(r);
    j["command"] = "curves";
    emit(out, j);
  } else {
    line(out, "f", to_string(r.f));
    line(out, "F", bipoly_string(r.F));
    for (const auto& l : r.linear)
      line(out, "linear factor", bipoly_string(l.factor) + "  over Q(zeta_" + std::to_string(l.order) + ")");
    for (const auto& q : r.quadratic.factors) {
      std::string tags = q.minus_case ? "  [minus]" : "";
      if (q.plus_case) tags += "  [plus]";
      line(out, "quadratic factor", bipoly_string(q.factor) + tags);
    }
    for (const auto& [a, b] : r.quadratic.unresolved)
      line(out, "unresolved pair", std::to_string(a) + "," + std::to_string(b));
    line(out, "cyclic inner", r.cyclic.found ? "n = " + std::to_string(r.cyclic.n) : "no");
    line(out, "Chebyshev inner", r.chebyshev.found ? "n = " + std::to_string(r.chebyshev.n) : "no");
    line(out, "F points at infinity", std::to_string(r.F_points_at_infinity));
    line(out, "no small factor", r.no_small_factor ? "yes" : "no");
    line(out, "consistent", r.consistent ? "yes" : "no");
  }
  if (!r.consistent) throw CheckFailure("factor search disagrees with decomposition detection");
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbit counting and freeness certificates for sets of maps of P^1(Q)"};
  app.require_subcommand(1);
  Common common;
  std::string file, fractions, point, height, parts, targets, expr, cap = "10000", delta_text;
  bool enumerate = false;
  long n = 0;
  unsigned cheb = 0;
  std::size_t rel_len = 5;

  auto with_delta = [&](CLI::App* sub) { sub->add_option("--delta", delta_text, "approximation radius (p/q or decimal)"); };

  auto* analyze = app.add_subcommand("analyze", "freeness certificate, height constants and bound constants");
  analyze->add_option("set", file, "map-set JSON file")->required();
  analyze->add_option("--delta-fractions", fractions, "n_1..n_s,m_1..m_s,u");
  analyze->add_option("--max-len", common.cfg.max_len, "word length for the relation search");
  with_delta(analyze);

  auto* census = app.add_subcommand("census", "height-count bounds and exhaustive orbit census");
  census->add_option("set", file, "map-set JSON file")->required();
  census->add_option("--point", point, "p/q or [x:y]")->required();
  census->add_option("--max-height", height, "B, e.g. 10^20 or 1e20")->required();
  census->add_flag("--enumerate", enumerate, "also enumerate the orbit and check the bounds");
  with_delta(census);

  auto* comp = app.add_subcommand("compositions", "restricted composition counts");
  comp->add_option("--parts", parts, "comma-separated parts")->required();
  comp->add_option("--n", n, "total")->required();

  auto* approx = app.add_subcommand("approx", "simultaneous approximation with coprime numerators");
  approx->add_option("--targets", targets, "comma-separated targets: logK or p/q")->required();
  with_delta(approx);

  auto* relations = app.add_subcommand("relations", "equal composites among short words");
  relations->add_option("set", file, "map-set JSON file")->required();
  relations->add_option("--max-len", rel_len, "maximum word length");
  relations->add_option("--degree-cap", cap, "skip words of larger degree");

  auto* curves = app.add_subcommand("curves", "factors of degree <= 2 of (f(X) - f(Y))/(X - Y)");
  curves->add_option("file", file, "polynomial JSON file");
  curves->add_option("--poly", expr, "polynomial expression in x");
  curves->add_option("--chebyshev", cheb, "use T_n");

  for (auto* sub : {analyze, census, comp, approx, relations, curves}) add_common(sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    common.cfg.precision = common.precision_flag != 0 ? common.precision_flag : precision_from_env(common.cfg.precision);
    if (!delta_text.empty()) common.cfg.delta = parse_rat(delta_text);
    common.cfg.validate();
    set_default_precision(common.cfg.precision);
    if (*analyze) return cmd_analyze(common, file, fractions, out);
    if (*census) return cmd_census(common, file, point, height, enumerate, out);
    if (*comp) return cmd_compositions(common, parts, n, out);
    if (*approx) return cmd_approx(common, targets, out);
    if (*relations) return cmd_relations(common, file, rel_len, cap, out);
    if (*curves) return cmd_curves(common, file, expr, cheb, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}

}  // namespace orbitcensus::cli
