#include "entropy_banach/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "entropy_banach/errors.hpp"

namespace eb {

namespace {

std::vector<Q> q_list(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Q> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(q_from_json(v));
  return out;
}

Json q_array(const std::vector<Q>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json to_json(const Q& x) { return format_q(x); }

Q q_from_json(const Json& j) {
  if (j.is_string()) return parse_q(j.get<std::string>());
  if (j.is_number_integer()) return Q(j.get<long>());
  if (j.is_number_unsigned()) return Q(j.get<unsigned long>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError("non-finite number");
    return Q(v);
  }
  throw ParseError("expected a rational (string \"p/q\" or number)");
}

Json to_json(const IntervalQ& j) { return Json::array({to_json(j.lo), to_json(j.hi)}); }

IntervalQ interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("interval must be [lo, hi]");
  try {
    return IntervalQ(q_from_json(j[0]), q_from_json(j[1]));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const PLMap& f) {
  return Json{{"breakpoints", q_array(f.breakpoints())}, {"values", q_array(f.values())}};
}

PLMap plmap_from_json(const Json& j) {
  try {
    return PLMap(q_list(field(j, "breakpoints")), q_list(field(j, "values")));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid PL map: ") + e.what());
  }
}

Json to_json(const HorseshoeCertificate& c) {
  Json ivs = Json::array();
  for (const auto& iv : c.intervals) ivs.push_back(to_json(iv));
  return Json{{"d", c.d}, {"k", c.k}, {"intervals", ivs}};
}

HorseshoeCertificate certificate_from_json(const Json& j) {
  HorseshoeCertificate c;
  c.d = field(j, "d").get<int>();
  c.k = field(j, "k").get<int>();
  for (const auto& iv : field(j, "intervals")) c.intervals.push_back(interval_from_json(iv));
  return c;
}

Json to_json(const EntropyBounds& b) {
  Json out{{"lower", b.lower},
           {"depth_used", b.depth_used},
           {"lower_source", b.lower_source}};
  out["upper"] = std::isinf(b.upper) ? Json(nullptr) : Json(b.upper);
  out["lower_witness"] = b.lower_witness ? to_json(*b.lower_witness) : Json(nullptr);
  return out;
}

EntropyBounds bounds_from_json(const Json& j) {
  EntropyBounds b;
  b.lower = field(j, "lower").get<double>();
  const Json& up = field(j, "upper");
  b.upper = up.is_null() ? std::numeric_limits<double>::infinity() : up.get<double>();
  b.depth_used = field(j, "depth_used").get<int>();
  b.lower_source = field(j, "lower_source").get<std::string>();
  if (j.contains("lower_witness") && !j.at("lower_witness").is_null())
    b.lower_witness = certificate_from_json(j.at("lower_witness"));
  return b;
}

Json to_json(const FunctionFamily& fs) {
  Json members = Json::array();
  for (const auto& f : fs.members) members.push_back(to_json(f));
  return Json{{"label", fs.label}, {"members", members}};
}

FunctionFamily family_from_json(const Json& j) {
  FunctionFamily fs;
  if (j.contains("label")) fs.label = j.at("label").get<std::string>();
  for (const auto& m : field(j, "members")) fs.members.push_back(plmap_from_json(m));
  return fs;
}

Json to_json(const ScaleSchedule& s) {
  return Json{{"kind", s.kind == ScheduleKind::geometric ? "geometric" : "hoelder"},
              {s.kind == ScheduleKind::geometric ? "ratio" : "alpha", to_json(s.ratio_or_alpha)},
              {"N", s.N},
              {"p", q_array(s.p)},
              {"q", q_array(s.q)}};
}

Json to_json(const GammaSchedule& s) { return Json{{"M", s.M}, {"gammas", q_array(s.gammas)}}; }

Json to_json(const WitnessReport& r) {
  Json steps = Json::array();
  for (const auto& st : r.steps) {
    steps.push_back(Json{{"m", st.m},
                         {"n", st.n},
                         {"epsilon", to_json(st.epsilon)},
                         {"J", to_json(st.J)},
                         {"oscillation", to_json(st.oscillation)},
                         {"beta", q_array(st.beta)},
                         {"alpha", q_array(st.alpha)},
                         {"levels", st.levels},
                         {"rows", st.rows},
                         {"points", q_array(st.points)},
                         {"certificate", to_json(st.certificate)}});
  }
  return Json{{"f", to_json(r.f)},
              {"x0", to_json(r.x0)},
              {"model", Json{{"N", r.model.N}, {"delta", to_json(r.model.delta)}}},
              {"gammas", to_json(r.gammas)},
              {"steps", steps},
              {"coefficient_l1_norm", to_json(r.coefficient_l1_norm)}};
}

WitnessReport witness_from_json(const Json& j) {
  WitnessReport r;
  r.f = plmap_from_json(field(j, "f"));
  r.x0 = q_from_json(field(j, "x0"));
  const Json& model = field(j, "model");
  r.model.N = field(model, "N").get<int>();
  r.model.delta = q_from_json(field(model, "delta"));
  const Json& gammas = field(j, "gammas");
  r.gammas.M = field(gammas, "M").get<int>();
  r.gammas.gammas = q_list(field(gammas, "gammas"));
  for (const auto& s : field(j, "steps")) {
    WitnessStep st;
    st.m = field(s, "m").get<int>();
    st.n = field(s, "n").get<int>();
    st.epsilon = q_from_json(field(s, "epsilon"));
    st.J = interval_from_json(field(s, "J"));
    st.oscillation = q_from_json(field(s, "oscillation"));
    st.beta = q_list(field(s, "beta"));
    st.alpha = q_list(field(s, "alpha"));
    st.levels = field(s, "levels").get<std::vector<int>>();
    st.rows = field(s, "rows").get<std::vector<int>>();
    st.points = q_list(field(s, "points"));
    st.certificate = certificate_from_json(field(s, "certificate"));
    r.steps.push_back(std::move(st));
  }
  r.coefficient_l1_norm = q_from_json(field(j, "coefficient_l1_norm"));
  return r;
}

Json to_json(const DialConfig& c) {
  return Json{{"t", c.t},
              {"d", c.d},
              {"a_star", to_json(c.a_star)},
              {"N", c.N},
              {"lambda_grid_size", c.lambda_grid_size},
              {"entropy_depth", c.entropy_depth},
              {"tolerance", c.tolerance}};
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(column));
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return parse_json_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::string polyline_csv(const PLMap& f, const std::string& label) {
  std::ostringstream out;
  out.precision(17);
  out << "# " << label << "\n";
  for (std::size_t k = 0; k < f.size(); ++k)
    out << to_double(f.breakpoints()[k]) << "," << to_double(f.values()[k]) << "\n";
  return out.str();
}

}  // namespace eb
