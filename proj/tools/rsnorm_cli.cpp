// rsnorm: classify rational functions on real plane curves.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rsnorm/rsnorm.hpp"

namespace {

using namespace rsnorm;

struct Options {
  std::string input;
  std::string format = "human";
  int realness_budget = 64;
  bool probe = false;
  bool batch = false;
  bool timing = false;
  std::string curve, num, den;
  std::vector<std::string> assign;
  std::string map_u, map_v, map_p = "w";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadJob, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "#2=x" or "1/2,0=3".
AssignmentSpec parse_assign(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) fail(ErrorCode::BadJob, "an assignment reads LOCATION=VALUE: " + text);
  AssignmentSpec a;
  a.value = text.substr(eq + 1);
  const std::string loc = text.substr(0, eq);
  if (!loc.empty() && loc[0] == '#') {
    try {
      std::size_t used = 0;
      a.index = std::stoi(loc.substr(1), &used);
      if (used + 1 != loc.size()) throw std::invalid_argument(loc);
    } catch (const std::logic_error&) {
      fail(ErrorCode::BadJob, "bad point index " + loc);
    }
    return a;
  }
  const auto comma = loc.find(',');
  if (comma == std::string::npos) fail(ErrorCode::BadJob, "a point reads X,Y or #INDEX: " + loc);
  a.at = std::make_pair(loc.substr(0, comma), loc.substr(comma + 1));
  return a;
}

JobSpec base_job(Command cmd, const Options& o) {
  JobSpec job;
  job.command = cmd;
  job.curve = o.curve;
  job.num = o.num;
  job.den = o.den;
  for (const auto& a : o.assign) job.assignments.push_back(parse_assign(a));
  job.map_u = o.map_u;
  job.map_v = o.map_v;
  job.map_p = o.map_p;
  job.realness_budget = o.realness_budget;
  job.probe = o.probe;
  job.timing = o.timing;
  return job;
}

ReportDocument error_document(Command cmd, const Error& e) {
  ReportDocument d;
  d.command = command_name(cmd);
  d.error = report::ErrorInfo{static_cast<int>(e.code()), std::string(error_code_name(e.code())), e.what()};
  return d;
}

ReportDocument run_one(Command cmd, const Options& o, const nlohmann::json* spec) {
  try {
    JobSpec job = base_job(cmd, o);
    if (spec) job = job_from_json(*spec, job);
    return run_classify(job);
  } catch (const Error& e) {
    return error_document(cmd, e);
  }
}

std::vector<ReportDocument> run_batch(Command cmd, const Options& o, const std::vector<nlohmann::json>& specs) {
  std::vector<ReportDocument> out(specs.size());
  const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < specs.size(); start += workers) {
    std::vector<std::future<ReportDocument>> running;
    for (std::size_t i = start; i < std::min(specs.size(), start + workers); ++i)
      running.push_back(std::async(std::launch::async, [&, i] { return run_one(cmd, o, &specs[i]); }));
    for (std::size_t i = 0; i < running.size(); ++i) out[start + i] = running[i].get();
  }
  return out;
}

int emit(const std::vector<ReportDocument>& docs, const Options& o, bool as_list) {
  if (o.format == "machine") {
    std::cout << (as_list ? emit_machine(docs) : emit_machine(docs.front()));
  } else {
    for (std::size_t i = 0; i < docs.size(); ++i) std::cout << (i ? "\n" : "") << emit_human(docs[i]);
  }
  int code = 0;
  for (const auto& d : docs) {
    if (d.error) std::cerr << "rsnorm: " << d.error->name << ": " << d.error->message << "\n";
    if (!code) code = exit_code(d);
  }
  return code;
}

int run(Command cmd, const Options& o) {
  if (cmd == Command::Demo) {
    auto docs = run_demo(o.probe, o.timing);
    const int code = emit(docs, o, true);
    for (const auto& d : docs)
      if (d.demo && !d.demo->passed) return static_cast<int>(ErrorCode::Internal);
    return code;
  }
  try {
    if (o.input.empty()) {
      if (o.batch) fail(ErrorCode::BadJob, "--batch needs --input");
      return emit({run_one(cmd, o, nullptr)}, o, false);
    }
    const auto specs = job_objects(read_file(o.input));
    if (o.batch) return emit(run_batch(cmd, o, specs), o, true);
    if (specs.size() != 1) fail(ErrorCode::BadJob, "the input holds several jobs; use --batch");
    return emit({run_one(cmd, o, &specs.front())}, o, false);
  } catch (const Error& e) {
    return emit({error_document(cmd, e)}, o, false);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify rational functions on real plane curves: regular, K+, KR+, integral."};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--input", o.input, "job file (JSON)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--realness-budget", o.realness_budget, "sample points tried per curve factor")->check(CLI::PositiveNumber);
  app.add_flag("--probe,!--no-probe", o.probe, "run the continuity probe at every real bad point");
  app.add_flag("--batch", o.batch, "the input file holds a list of jobs");
  app.add_flag("--timing", o.timing, "record the run time (breaks byte-identical output)");
  app.add_option("--curve", o.curve, "curve polynomial F(x, y)");
  app.add_option("--num", o.num, "numerator p(x, y)");
  app.add_option("--den", o.den, "denominator q(x, y)");
  app.add_option("--assign", o.assign, "value at a bad point: X,Y=VALUE or #INDEX=VALUE");
  app.add_option("--map-u", o.map_u, "check-morphism: x = u(w)");
  app.add_option("--map-v", o.map_v, "check-morphism: y = v(w)");
  app.add_option("--map-p", o.map_p, "check-morphism: polynomial in w tested for constancy on fibers");

  Command cmd = Command::Classify;
  auto sub = [&](const char* name, Command c, const char* help) { app.add_subcommand(name, help)->callback([&cmd, c] { cmd = c; }); };
  sub("classify", Command::Classify, "verdicts, certificates and fibers");
  sub("fibers", Command::Fibers, "bad points and fibers of the graph closure; singular points when no function is given");
  sub("present", Command::Present, "presentation of R[X][f] as Q[x, y, t] / J");
  sub("check-morphism", Command::CheckMorphism, "is p constant on the fibers of w -> (u(w), v(w))");
  sub("demo", Command::Demo, "replay the built-in examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorCode::BadJob);
  }
  return run(cmd, o);
}
