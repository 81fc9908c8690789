#ifndef RSNORM_REPORT_HPP
#define RSNORM_REPORT_HPP

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "corpus.hpp"
#include "morphism.hpp"
#include "parse.hpp"
#include "probe.hpp"

namespace rsnorm {

enum class Command { Classify, Fibers, Present, CheckMorphism, Demo };

inline const char* command_name(Command c) {
  switch (c) {
  case Command::Classify: return "classify";
  case Command::Fibers: return "fibers";
  case Command::Present: return "present";
  case Command::CheckMorphism: return "check-morphism";
  case Command::Demo: return "demo";
  }
  return "classify";
}

/// A value at a bad point, located by exact coordinates (x, y) or by index.
struct AssignmentSpec {
  std::optional<std::pair<std::string, std::string>> at;
  std::optional<int> index;
  std::string value;
};

struct JobSpec {
  Command command = Command::Classify;
  std::string curve;
  std::string num, den;
  std::vector<AssignmentSpec> assignments;
  // check-morphism: w -> (u(w), v(w)) and a polynomial in w
  std::string map_u, map_v, map_p;
  int realness_budget = 64;
  bool probe = false;
  ProbeSchedule schedule;
  bool timing = false;
};

namespace report {

struct Realness {
  std::string factor, status, witness;
  friend bool operator==(const Realness&, const Realness&) = default;
};

struct Assignment {
  std::string point;
  std::string value;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct BadPointEntry {
  int index = -1; // -1 for a non-real class
  std::string point;
  int conjugates = 1;
  friend bool operator==(const BadPointEntry&, const BadPointEntry&) = default;
};

struct Fiber {
  std::string point;
  bool real = false;
  std::string fiber;
  int distinct_complex = 0;
  std::optional<int> distinct_real;
  std::optional<std::string> singleton;
  std::optional<bool> matches;
  friend bool operator==(const Fiber&, const Fiber&) = default;
};

struct Failure {
  int condition = 0;
  std::string point, detail;
  friend bool operator==(const Failure&, const Failure&) = default;
};

struct Verdicts {
  std::string regular, k_plus, k_r_plus, integral;
  friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

struct Certificates {
  std::optional<std::string> integral_relation, regular_witness, regular_obstruction;
  friend bool operator==(const Certificates&, const Certificates&) = default;
};

struct Probe {
  std::string point, outcome;
  int branches = 0;
  std::optional<std::string> sample_x, sample_value;
  friend bool operator==(const Probe&, const Probe&) = default;
};

struct Presentation {
  std::vector<std::string> relations, curve_relations;
  std::string integral_relation;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

struct SingularClass {
  std::string system;
  int conjugates = 0;
  std::vector<std::string> real_points;
  friend bool operator==(const SingularClass&, const SingularClass&) = default;
};

struct Morphism {
  std::string u, v, p;
  bool constant = true;
  std::vector<std::string> checked_points;
  std::vector<FiberWitness> witnesses;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct DemoCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> mismatches;
  friend bool operator==(const DemoCheck&, const DemoCheck&) = default;
};

struct ErrorInfo {
  int code = 0;
  std::string name, message;
  friend bool operator==(const ErrorInfo&, const ErrorInfo&) = default;
};

} // namespace report

/// Everything a run produces, as text and small integers. Optional parts are absent when
/// the command does not compute them.
struct ReportDocument {
  std::string command;
  std::string curve;
  std::optional<std::string> num, den;
  std::vector<report::Assignment> assignments;
  std::vector<report::Realness> realness;
  std::vector<report::BadPointEntry> bad_points;
  std::optional<report::Verdicts> verdicts;
  std::optional<report::Certificates> certificates;
  std::vector<report::Fiber> fibers;
  std::vector<report::Failure> failures;
  std::vector<std::string> caveats;
  std::optional<bool> hierarchy_consistent;
  std::optional<std::vector<report::Probe>> probe;
  std::optional<report::Presentation> presentation;
  std::optional<std::vector<report::SingularClass>> singular_points;
  std::optional<report::Morphism> morphism;
  std::optional<report::DemoCheck> demo;
  std::optional<report::ErrorInfo> error;
  std::optional<double> seconds;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

namespace detail {

using nlohmann::json;

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

inline std::string poly_text(const MPoly& p) { return mpoly::to_string(p); }

inline Rational parse_rational(const std::string& text) {
  MPoly p = parse_poly(text);
  if (!p.is_constant()) fail(ErrorCode::BadJob, "point coordinates must be rational numbers: " + text);
  return p.constant_term();
}

} // namespace detail

// ---- machine format ----

inline nlohmann::json to_json(const ReportDocument& d) {
  using detail::json;
  using detail::opt;
  json j;
  j["command"] = d.command;
  j["curve"] = d.curve;
  j["function"] = d.num ? json{{"num", *d.num}, {"den", *d.den}} : json(nullptr);
  j["assignments"] = json::array();
  for (const auto& a : d.assignments) j["assignments"].push_back({{"point", a.point}, {"value", a.value}});
  j["realness"] = json::array();
  for (const auto& r : d.realness) j["realness"].push_back({{"factor", r.factor}, {"status", r.status}, {"witness", r.witness}});
  j["bad_points"] = json::array();
  for (const auto& b : d.bad_points)
    j["bad_points"].push_back({{"index", b.index < 0 ? json(nullptr) : json(b.index)}, {"point", b.point}, {"conjugates", b.conjugates}});
  if (d.verdicts)
    j["verdicts"] = {{"regular", d.verdicts->regular}, {"k_plus", d.verdicts->k_plus}, {"k_r_plus", d.verdicts->k_r_plus},
                     {"integral", d.verdicts->integral}};
  else
    j["verdicts"] = nullptr;
  if (d.certificates)
    j["certificates"] = {{"integral_relation", opt(d.certificates->integral_relation)},
                         {"regular_witness", opt(d.certificates->regular_witness)},
                         {"regular_obstruction", opt(d.certificates->regular_obstruction)}};
  else
    j["certificates"] = nullptr;
  j["fibers"] = json::array();
  for (const auto& f : d.fibers)
    j["fibers"].push_back({{"point", f.point},
                           {"real", f.real},
                           {"fiber", f.fiber},
                           {"distinct_complex", f.distinct_complex},
                           {"distinct_real", opt(f.distinct_real)},
                           {"singleton", opt(f.singleton)},
                           {"matches", opt(f.matches)}});
  j["failures"] = json::array();
  for (const auto& f : d.failures) j["failures"].push_back({{"condition", f.condition}, {"point", f.point}, {"detail", f.detail}});
  j["caveats"] = d.caveats;
  j["hierarchy_consistent"] = opt(d.hierarchy_consistent);
  if (d.probe) {
    j["probe"] = json::array();
    for (const auto& p : *d.probe)
      j["probe"].push_back({{"point", p.point}, {"outcome", p.outcome}, {"branches", p.branches},
                            {"sample_x", opt(p.sample_x)}, {"sample_value", opt(p.sample_value)}});
  } else {
    j["probe"] = nullptr;
  }
  if (d.presentation)
    j["presentation"] = {{"relations", d.presentation->relations},
                         {"curve_relations", d.presentation->curve_relations},
                         {"integral_relation", d.presentation->integral_relation}};
  else
    j["presentation"] = nullptr;
  if (d.singular_points) {
    j["singular_points"] = json::array();
    for (const auto& s : *d.singular_points)
      j["singular_points"].push_back({{"system", s.system}, {"conjugates", s.conjugates}, {"real_points", s.real_points}});
  } else {
    j["singular_points"] = nullptr;
  }
  if (d.morphism) {
    json w = json::array();
    for (const auto& x : d.morphism->witnesses) w.push_back({{"point", x.point}, {"fiber_size", x.fiber_size}, {"residue", x.residue}});
    j["morphism"] = {{"u", d.morphism->u}, {"v", d.morphism->v}, {"p", d.morphism->p}, {"constant", d.morphism->constant},
                     {"checked_points", d.morphism->checked_points}, {"witnesses", w}};
  } else {
    j["morphism"] = nullptr;
  }
  if (d.demo)
    j["demo"] = {{"name", d.demo->name}, {"passed", d.demo->passed}, {"mismatches", d.demo->mismatches}};
  else
    j["demo"] = nullptr;
  if (d.error)
    j["error"] = {{"code", d.error->code}, {"name", d.error->name}, {"message", d.error->message}};
  else
    j["error"] = nullptr;
  if (d.seconds) j["seconds"] = *d.seconds;
  return j;
}

inline ReportDocument from_json(const nlohmann::json& j) {
  using detail::get_opt;
  using detail::json;
  ReportDocument d;
  d.command = j.at("command").get<std::string>();
  d.curve = j.at("curve").get<std::string>();
  if (!j.at("function").is_null()) {
    d.num = j.at("function").at("num").get<std::string>();
    d.den = j.at("function").at("den").get<std::string>();
  }
  for (const auto& a : j.at("assignments")) d.assignments.push_back({a.at("point"), a.at("value")});
  for (const auto& r : j.at("realness")) d.realness.push_back({r.at("factor"), r.at("status"), r.at("witness")});
  for (const auto& b : j.at("bad_points"))
    d.bad_points.push_back({b.at("index").is_null() ? -1 : b.at("index").get<int>(), b.at("point"), b.at("conjugates")});
  if (const auto& v = j.at("verdicts"); !v.is_null())
    d.verdicts = report::Verdicts{v.at("regular"), v.at("k_plus"), v.at("k_r_plus"), v.at("integral")};
  if (const auto& c = j.at("certificates"); !c.is_null())
    d.certificates = report::Certificates{get_opt<std::string>(c, "integral_relation"), get_opt<std::string>(c, "regular_witness"),
                                          get_opt<std::string>(c, "regular_obstruction")};
  for (const auto& f : j.at("fibers"))
    d.fibers.push_back({f.at("point"), f.at("real"), f.at("fiber"), f.at("distinct_complex"), get_opt<int>(f, "distinct_real"),
                        get_opt<std::string>(f, "singleton"), get_opt<bool>(f, "matches")});
  for (const auto& f : j.at("failures")) d.failures.push_back({f.at("condition"), f.at("point"), f.at("detail")});
  d.caveats = j.at("caveats").get<std::vector<std::string>>();
  d.hierarchy_consistent = get_opt<bool>(j, "hierarchy_consistent");
  if (const auto& p = j.at("probe"); !p.is_null()) {
    d.probe.emplace();
    for (const auto& x : p)
      d.probe->push_back({x.at("point"), x.at("outcome"), x.at("branches"), get_opt<std::string>(x, "sample_x"),
                          get_opt<std::string>(x, "sample_value")});
  }
  if (const auto& p = j.at("presentation"); !p.is_null())
    d.presentation = report::Presentation{p.at("relations"), p.at("curve_relations"), p.at("integral_relation")};
  if (const auto& s = j.at("singular_points"); !s.is_null()) {
    d.singular_points.emplace();
    for (const auto& x : s) d.singular_points->push_back({x.at("system"), x.at("conjugates"), x.at("real_points")});
  }
  if (const auto& m = j.at("morphism"); !m.is_null()) {
    report::Morphism r{m.at("u"), m.at("v"), m.at("p"), m.at("constant"), m.at("checked_points"), {}};
    for (const auto& w : m.at("witnesses")) r.witnesses.push_back({w.at("point"), w.at("fiber_size"), w.at("residue")});
    d.morphism = std::move(r);
  }
  if (const auto& x = j.at("demo"); !x.is_null()) d.demo = report::DemoCheck{x.at("name"), x.at("passed"), x.at("mismatches")};
  if (const auto& e = j.at("error"); !e.is_null()) d.error = report::ErrorInfo{e.at("code"), e.at("name"), e.at("message")};
  d.seconds = get_opt<double>(j, "seconds");
  return d;
}

/// Canonical machine text: sorted keys, two-space indent, trailing newline.
inline std::string emit_machine(const ReportDocument& d) { return to_json(d).dump(2) + "\n"; }

inline std::string emit_machine(const std::vector<ReportDocument>& docs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& d : docs) a.push_back(to_json(d));
  return a.dump(2) + "\n";
}

inline ReportDocument parse_machine(const std::string& text) {
  try {
    return from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadJob, std::string("malformed report: ") + e.what());
  }
}

inline std::vector<ReportDocument> parse_machine_batch(const std::string& text) {
  try {
    std::vector<ReportDocument> out;
    for (const auto& j : nlohmann::json::parse(text)) out.push_back(from_json(j));
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadJob, std::string("malformed report: ") + e.what());
  }
}

// ---- human format ----

namespace detail {

/// Left-aligned columns separated by two spaces.
inline void table(std::ostream& os, const std::vector<std::vector<std::string>>& rows, const std::string& indent) {
  std::vector<std::size_t> w;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (w.size() <= i) w.push_back(0);
      w[i] = std::max(w[i], r[i].size());
    }
  for (const auto& r : rows) {
    std::string line = indent;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(w[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
}

inline std::string yes_no(std::optional<bool> b) { return b ? (*b ? "yes" : "no") : "-"; }

} // namespace detail

inline std::string emit_human(const ReportDocument& d) {
  std::ostringstream os;
  std::vector<std::vector<std::string>> head{{"command", d.command}};
  if (d.demo) head.push_back({"example", d.demo->name});
  if (!d.curve.empty()) head.push_back({"curve", d.curve + " = 0"});
  if (d.num) head.push_back({"function", "(" + *d.num + ") / (" + *d.den + ")"});
  for (const auto& a : d.assignments) head.push_back({"value", a.point + " -> " + a.value});
  for (const auto& r : d.realness) head.push_back({"realness", r.factor + ": " + r.status + (r.witness.empty() ? "" : " (" + r.witness + ")")});
  if (d.error) head.push_back({"error", d.error->name + " (" + std::to_string(d.error->code) + "): " + d.error->message});
  detail::table(os, head, "");
  if (d.error) return os.str();
  if (!d.bad_points.empty()) {
    os << "bad points\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& b : d.bad_points)
      rows.push_back({b.index < 0 ? "-" : "#" + std::to_string(b.index), b.point, b.index < 0 ? std::to_string(b.conjugates) + " conjugates" : ""});
    detail::table(os, rows, "  ");
  }
  if (d.verdicts) {
    os << "verdicts\n";
    detail::table(os, {{"regular", d.verdicts->regular}, {"k_plus", d.verdicts->k_plus}, {"k_r_plus", d.verdicts->k_r_plus},
                       {"integral", d.verdicts->integral}},
                  "  ");
  }
  if (d.certificates) {
    std::vector<std::vector<std::string>> rows;
    if (d.certificates->integral_relation) rows.push_back({"integral relation", *d.certificates->integral_relation});
    if (d.certificates->regular_witness) rows.push_back({"regular witness", "h = " + *d.certificates->regular_witness});
    if (d.certificates->regular_obstruction) rows.push_back({"p mod (F, q)", *d.certificates->regular_obstruction});
    if (!rows.empty()) {
      os << "certificates\n";
      detail::table(os, rows, "  ");
    }
  }
  if (!d.fibers.empty()) {
    os << "fibers\n";
    std::vector<std::vector<std::string>> rows{{"point", "real", "fiber", "complex", "real roots", "singleton", "matches"}};
    for (const auto& f : d.fibers)
      rows.push_back({f.point, f.real ? "yes" : "no", f.fiber, std::to_string(f.distinct_complex),
                      f.distinct_real ? std::to_string(*f.distinct_real) : "-", f.singleton.value_or("-"), detail::yes_no(f.matches)});
    detail::table(os, rows, "  ");
  }
  if (!d.failures.empty()) {
    os << "failed conditions\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& f : d.failures)
      rows.push_back({f.condition == 5 ? "non-real" : "(" + std::to_string(f.condition) + ")", f.point.empty() ? "-" : f.point, f.detail});
    detail::table(os, rows, "  ");
  }
  if (d.probe) {
    os << "continuity probe\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : *d.probe) {
      std::string s = p.sample_x ? "x = " + *p.sample_x + ", f = " + p.sample_value.value_or("?") : "";
      rows.push_back({p.point, p.outcome, std::to_string(p.branches) + " branches", s});
    }
    detail::table(os, rows, "  ");
  }
  if (d.presentation) {
    os << "presentation  Q[x, y, t] / J\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : d.presentation->relations) rows.push_back({"J", r});
    for (const auto& r : d.presentation->curve_relations) rows.push_back({"J & Q[x, y]", r});
    rows.push_back({"integral", d.presentation->integral_relation});
    detail::table(os, rows, "  ");
  }
  if (d.singular_points) {
    os << "singular points\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : *d.singular_points) {
      std::string real;
      for (const auto& p : s.real_points) real += (real.empty() ? "" : " ") + p;
      rows.push_back({std::to_string(s.conjugates) + (s.conjugates == 1 ? " point" : " points"), real.empty() ? "non-real" : real, s.system});
    }
    detail::table(os, rows, "  ");
  }
  if (d.morphism) {
    os << "morphism  w -> (" << d.morphism->u << ", " << d.morphism->v << "), p = " << d.morphism->p << "\n";
    os << "  constant on fibers: " << (d.morphism->constant ? "yes" : "no") << "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : d.morphism->checked_points) rows.push_back({"checked", p});
    for (const auto& w : d.morphism->witnesses)
      rows.push_back({"witness", w.point, std::to_string(w.fiber_size) + " preimages", "p mod fiber = " + w.residue});
    detail::table(os, rows, "  ");
  }
  for (const auto& c : d.caveats) os << "caveat: " << c << "\n";
  if (d.hierarchy_consistent && !*d.hierarchy_consistent) os << "warning: verdict chain inconsistent\n";
  if (d.demo) {
    os << "expected table: " << (d.demo->passed ? "match" : "MISMATCH") << "\n";
    for (const auto& m : d.demo->mismatches) os << "  " << m << "\n";
  }
  if (d.seconds) os << "time " << *d.seconds << " s\n";
  return os.str();
}

// ---- running jobs ----

namespace detail {

inline report::Fiber fiber_entry(const FiberReport& r) {
  report::Fiber f;
  f.point = r.point;
  f.real = r.real;
  f.fiber = fiber_text(r);
  f.distinct_complex = r.distinct_complex;
  if (r.real) f.distinct_real = r.distinct_real;
  if (r.singleton) f.singleton = poly_text(element_to_mpoly(BadPoint{r.tower, r.y_first}, *r.singleton));
  f.matches = r.matches;
  return f;
}

inline std::vector<report::BadPointEntry> bad_point_entries(const std::vector<BadPoint>& bad) {
  std::vector<report::BadPointEntry> real, rest;
  for (const auto& b : bad) {
    for (const auto& e : b.tower.real_embeddings()) real.push_back({e.id, point_label(b, e), 1});
    if (b.has_nonreal()) rest.push_back({-1, class_label(b), b.class_size() - b.real_count()});
  }
  std::sort(real.begin(), real.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  real.insert(real.end(), rest.begin(), rest.end());
  return real;
}

inline std::vector<report::SingularClass> singular_entries(const std::vector<BadPoint>& pts) {
  std::vector<report::SingularClass> out;
  for (const auto& b : pts) {
    report::SingularClass s{class_label(b), b.class_size(), {}};
    for (const auto& e : b.tower.real_embeddings()) s.real_points.push_back(point_label(b, e));
    out.push_back(std::move(s));
  }
  return out;
}

/// Curve, function and values of a job, with the echo filled into the document.
struct Prepared {
  PlaneCurve curve;
  std::optional<CurveFunction> f;
};

inline Prepared prepare(const JobSpec& job, ReportDocument& doc) {
  const MPoly F = parse_poly(job.curve);
  doc.curve = poly_text(F);
  PlaneCurve curve = with_certified_realness(make_curve(F), job.realness_budget);
  for (const auto& r : curve.realness()) doc.realness.push_back({poly_text(r.factor), realness_name(r.status), r.witness});
  if (job.num.empty() && job.den.empty()) return {curve, std::nullopt};
  const MPoly p = parse_poly(job.num.empty() ? "0" : job.num), q = parse_poly(job.den.empty() ? "1" : job.den);
  doc.num = poly_text(p);
  doc.den = poly_text(q);
  std::vector<ValueAssignment> values;
  for (const auto& a : job.assignments) {
    ValueAssignment v;
    if (a.at) v.where.at = std::make_pair(parse_rational(a.at->first), parse_rational(a.at->second));
    v.where.index = a.index;
    v.value = parse_poly(a.value);
    values.push_back(std::move(v));
  }
  CurveFunction f = make_function(curve, p, q, values);
  doc.bad_points = bad_point_entries(f.bad);
  std::map<int, std::string> labels;
  for (const auto& b : doc.bad_points)
    if (b.index >= 0) labels[b.index] = b.point;
  for (const auto& [id, v] : f.values) doc.assignments.push_back({labels[id], poly_text(v)});
  return {curve, std::move(f)};
}

inline std::string decimal(const Rational& v) { return "~" + fixed_decimal(v, 6); }

inline void run_job(const JobSpec& job, ReportDocument& doc) {
  if (job.command == Command::CheckMorphism) {
    const MPoly F = parse_poly(job.curve);
    doc.curve = poly_text(F);
    const VarNames w{{"w", T}};
    const MPoly u = parse_poly(job.map_u, w), v = parse_poly(job.map_v, w), p = parse_poly(job.map_p, w);
    PresentedMorphism m = make_morphism(u, v, make_curve(F));
    ConstancyResult c = fiber_constancy_check(m, p);
    auto wtext = [](const MPoly& e) {
      std::string s = poly_text(e);
      std::replace(s.begin(), s.end(), 't', 'w');
      return s;
    };
    report::Morphism r{wtext(u), wtext(v), wtext(p), c.constant, c.checked_points, c.witnesses};
    for (auto& x : r.witnesses) std::replace(x.residue.begin(), x.residue.end(), 't', 'w');
    doc.morphism = std::move(r);
    return;
  }
  Prepared pr = prepare(job, doc);
  if (!pr.f) {
    if (job.command != Command::Fibers) fail(ErrorCode::BadJob, "the job has no function");
    doc.singular_points = singular_entries(singular_locus(pr.curve));
    return;
  }
  const CurveFunction& f = *pr.f;
  GraphIdeal g = graph_ideal(f);
  if (job.command == Command::Fibers) {
    for (const auto& r : fiber_reports(f, g)) doc.fibers.push_back(fiber_entry(r));
    return;
  }
  if (job.command == Command::Present) {
    rsnorm::Presentation p = present_extension(f, g);
    report::Presentation out;
    for (const auto& r : p.relations) out.relations.push_back(poly_text(r));
    for (const auto& r : p.curve_relations) out.curve_relations.push_back(poly_text(r));
    out.integral_relation = poly_text(p.integral_relation);
    doc.presentation = std::move(out);
    for (const auto& r : p.fibers) doc.fibers.push_back(fiber_entry(r));
    return;
  }
  ClassificationReport rep = classify(f, g);
  doc.verdicts = report::Verdicts{verdict_name(rep.verdicts.regular), verdict_name(rep.verdicts.k_plus),
                                  verdict_name(rep.verdicts.k_r_plus), verdict_name(rep.verdicts.integral)};
  report::Certificates cert;
  if (rep.integral_relation) cert.integral_relation = poly_text(*rep.integral_relation);
  if (rep.regular_witness) cert.regular_witness = poly_text(*rep.regular_witness);
  if (rep.regular_obstruction) cert.regular_obstruction = poly_text(*rep.regular_obstruction);
  doc.certificates = cert;
  for (const auto& r : rep.fibers) doc.fibers.push_back(fiber_entry(r));
  for (const auto& x : rep.failures) doc.failures.push_back({x.condition, x.point, x.detail});
  doc.caveats = rep.caveats;
  doc.hierarchy_consistent = rep.hierarchy_consistent;
  if (job.probe) {
    doc.probe.emplace();
    for (const auto& r : continuity_probe_all(f, job.schedule)) {
      report::Probe p{r.point, probe_outcome_name(r.outcome), r.branches, std::nullopt, std::nullopt};
      if (r.sample) {
        p.sample_x = rsnorm::to_string(r.sample->x);
        p.sample_value = decimal(r.sample->value.mid());
      }
      doc.probe->push_back(std::move(p));
    }
  }
}

} // namespace detail

/// Runs one job. Input errors become an error section in the document; they never throw.
inline ReportDocument run_classify(const JobSpec& job) {
  ReportDocument doc;
  doc.command = command_name(job.command);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    detail::run_job(job, doc);
  } catch (const Error& e) {
    doc.error = report::ErrorInfo{static_cast<int>(e.code()), std::string(error_code_name(e.code())), e.what()};
  }
  if (job.timing) doc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return doc;
}

/// Exit status of a run: 0 for any verdict, the error code for rejected input.
inline int exit_code(const ReportDocument& d) { return d.error ? d.error->code : 0; }

/// The corpus as jobs. The value is assigned at the origin.
inline JobSpec corpus_job(const CorpusEntry& e) {
  JobSpec job;
  job.curve = e.curve;
  if (e.num.empty()) {
    job.command = Command::Fibers;
    return job;
  }
  job.num = e.num;
  job.den = e.den;
  job.assignments.push_back({std::make_pair(std::string("0"), std::string("0")), std::nullopt, e.value_at_origin});
  return job;
}

/// Replays the corpus and compares each run with its expected table.
inline std::vector<ReportDocument> run_demo(bool probe = false, bool timing = false) {
  std::vector<ReportDocument> out;
  for (const auto& e : demo_corpus()) {
    JobSpec job = corpus_job(e);
    job.probe = probe && !e.num.empty();
    job.timing = timing;
    ReportDocument d = run_classify(job);
    d.command = command_name(Command::Demo);
    report::DemoCheck check{e.name, true, {}};
    auto expect = [&](const std::string& what, const std::string& got, const std::string& want) {
      if (got != want) check.mismatches.push_back(what + ": got " + got + ", expected " + want);
    };
    if (d.error) {
      check.mismatches.push_back("error: " + d.error->message);
    } else if (e.num.empty()) {
      int points = 0;
      for (const auto& s : *d.singular_points) points += s.conjugates;
      if (points < 7) check.mismatches.push_back("only " + std::to_string(points) + " singular points");
    } else {
      expect("regular", d.verdicts->regular, e.expect_regular);
      expect("k_plus", d.verdicts->k_plus, e.expect_k_plus);
      expect("k_r_plus", d.verdicts->k_r_plus, e.expect_k_r_plus);
      expect("integral", d.verdicts->integral, e.expect_integral);
      const auto& rel = d.certificates->integral_relation;
      if (!rel || parse_poly(*rel, graph_vars()) != parse_poly(e.expect_relation, graph_vars()))
        check.mismatches.push_back("integral relation: got " + rel.value_or("none") + ", expected " + e.expect_relation);
    }
    check.passed = check.mismatches.empty();
    d.demo = std::move(check);
    out.push_back(std::move(d));
  }
  return out;
}

// ---- job files ----

inline Command parse_command(const std::string& s) {
  for (Command c : {Command::Classify, Command::Fibers, Command::Present, Command::CheckMorphism, Command::Demo})
    if (s == command_name(c)) return c;
  fail(ErrorCode::BadJob, "unknown command " + s);
}

/// Reads a job from its JSON form:
/// {"curve": "...", "num": "...", "den": "...", "assignments": [{"at": ["0", "0"], "value": "0"},
///  {"index": 1, "value": "x"}], "map": {"u": "w^2", "v": "w^3", "p": "w"}, "realness_budget": 64,
///  "probe": true, "command": "classify"}
inline JobSpec job_from_json(const nlohmann::json& j, JobSpec defaults = {}) {
  JobSpec job = std::move(defaults);
  try {
    if (!j.is_object()) fail(ErrorCode::BadJob, "a job is a JSON object");
    if (j.contains("command")) job.command = parse_command(j.at("command").get<std::string>());
    job.curve = j.value("curve", job.curve);
    job.num = j.value("num", job.num);
    job.den = j.value("den", job.den);
    if (j.contains("assignments")) {
      job.assignments.clear();
      for (const auto& a : j.at("assignments")) {
        AssignmentSpec s;
        if (a.contains("at")) {
          const auto& at = a.at("at");
          if (!at.is_array() || at.size() != 2) fail(ErrorCode::BadJob, "\"at\" takes two coordinates");
          auto coord = [](const nlohmann::json& c) { return c.is_string() ? c.get<std::string>() : c.dump(); };
          s.at = std::make_pair(coord(at[0]), coord(at[1]));
        }
        if (a.contains("index")) s.index = a.at("index").get<int>();
        if (s.at && s.index) fail(ErrorCode::BadJob, "an assignment takes either \"at\" or \"index\"");
        const auto& v = a.at("value");
        s.value = v.is_string() ? v.get<std::string>() : v.dump();
        job.assignments.push_back(std::move(s));
      }
    }
    if (j.contains("map")) {
      const auto& m = j.at("map");
      job.map_u = m.at("u").get<std::string>();
      job.map_v = m.at("v").get<std::string>();
      job.map_p = m.value("p", std::string("w"));
    }
    job.realness_budget = j.value("realness_budget", job.realness_budget);
    job.probe = j.value("probe", job.probe);
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      if (s.contains("initial_radius")) job.schedule.initial_radius = detail::parse_rational(s.at("initial_radius").get<std::string>());
      if (s.contains("shrink")) job.schedule.shrink = detail::parse_rational(s.at("shrink").get<std::string>());
      job.schedule.steps = s.value("steps", job.schedule.steps);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadJob, std::string("malformed job: ") + e.what());
  }
  return job;
}

/// A job file holds one job object, an array of jobs, or {"jobs": [...]}.
inline std::vector<nlohmann::json> job_objects(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadJob, std::string("malformed job file: ") + e.what());
  }
  if (j.is_object() && j.contains("jobs")) j = j.at("jobs");
  if (!j.is_array()) return {j};
  return {j.begin(), j.end()};
}

} // namespace rsnorm

#endif // RSNORM_REPORT_HPP
