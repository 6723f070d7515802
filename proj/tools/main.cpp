#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symgrowth/errors.hpp"
#include "symgrowth/fixtures.hpp"
#include "symgrowth/report.hpp"

using namespace symgrowth;

namespace {

enum Exit { kOk = 0, kInput = 1, kPrecondition = 2, kInternal = 3 };

struct Outcome {
  Json json;
  std::string text;
  int code = kOk;
};

Outcome failure(const char* kind, const std::string& msg, int code, std::size_t line = 0, std::size_t col = 0) {
  Json j = error_json(kind, msg, line, col);
  return {j, render_text(j), code};
}

Outcome guarded(const std::function<JobSpec()>& make) {
  try {
    Report r = run(make());
    return {r.json, r.text, kOk};
  } catch (const InputError& e) {
    return failure("input", e.what(), kInput, e.line(), e.column());
  } catch (const PreconditionError& e) {
    return failure("precondition", e.what(), kPrecondition);
  } catch (const InternalFault& e) {
    return failure("internal", e.what(), kInternal);
  } catch (const std::exception& e) {
    return failure("internal", e.what(), kInternal);
  }
}

bool write_json(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betti numbers, complete resolutions and growth over graded Artinian rings"};
  std::string job_path;
  std::optional<int> steps, tail;
  std::optional<std::string> eta_text, fixture, cmd;
  std::optional<std::uint64_t> seed;
  std::string json_path;
  bool all_fixtures = false;
  bool list = false;
  app.add_option("job", job_path, "job file ('-' reads stdin)");
  app.add_option("--steps", steps, "window size s: indices -s..s (default 8, 10 for growth commands)")
      ->check(CLI::Range(1, 200));
  app.add_option("--tail", tail, "number of tail indices for the eventual checks (default 4)")->check(CLI::Range(1, 200));
  app.add_option("--eta", eta_text, "operator coefficients c1,c2,..");
  app.add_option("--seed", seed, "seed for the retry search (default 0)");
  app.add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
  app.add_option("--fixture", fixture, "run on a named fixture instead of a job file");
  app.add_option("--cmd", cmd, "command, overriding the job file");
  app.add_flag("--all-fixtures", all_fixtures, "run the command on every fixture");
  app.add_flag("--list-fixtures", list, "print the fixture names and exit");
  CLI11_PARSE(app, argc, argv);

  // The text report would corrupt JSON written to stdout.
  const bool json_to_stdout = json_path == "-";

  if (list) {
    for (const Fixture& f : standard_fixtures()) std::cout << f.name << "  " << f.description << "\n";
    return kOk;
  }

  std::string job_text;
  if (!job_path.empty()) {
    std::ostringstream buf;
    if (job_path == "-") {
      buf << std::cin.rdbuf();
    } else {
      std::ifstream in(job_path, std::ios::binary);
      if (!in) {
        Outcome o = failure("input", "cannot read " + job_path, kInput);
        std::cerr << o.text;
        if (!json_path.empty()) write_json(json_path, o.json);
        return o.code;
      }
      buf << in.rdbuf();
    }
    job_text = buf.str();
  }

  // Flags override the job file.
  auto make_job = [&](const std::optional<std::string>& fixture_name) {
    return [&, fixture_name]() {
      JobSpec job = job_text.empty() ? JobSpec{} : parse_job(job_text);
      if (fixture_name) {
        job.fixture = *fixture_name;
        job.ring.reset();
        job.module.reset();
      }
      if (cmd) {
        const auto& known = known_commands();
        if (std::find(known.begin(), known.end(), *cmd) == known.end())
          throw InputError("unknown command '" + *cmd + "'");
        job.command = *cmd;
      }
      if (steps) job.steps = *steps;
      if (tail) job.tail = *tail;
      if (seed) job.seed = *seed;
      if (eta_text) {
        JobSpec e = parse_job("eta = " + *eta_text);
        job.eta = e.eta;
      }
      return job;
    };
  };

  if (all_fixtures) {
    if (!cmd && job_text.empty()) cmd = "symgrowth";
    std::vector<std::string> names = fixture_names();
    std::vector<std::future<Outcome>> futures;
    for (const std::string& n : names) futures.push_back(std::async(std::launch::async, guarded, make_job(n)));
    Json all = Json::object();
    int code = kOk;
    for (std::size_t i = 0; i < names.size(); ++i) {
      Outcome o = futures[i].get();
      if (!json_to_stdout) std::cout << "== " << names[i] << "\n" << o.text;
      all[names[i]] = o.json;
      if (o.code == kInternal) code = kInternal;
    }
    if (!json_path.empty() && !write_json(json_path, all)) return kInput;
    return code;
  }

  if (job_text.empty() && !fixture) {
    Outcome o = failure("input", "no job file and no --fixture given", kInput);
    std::cerr << o.text;
    if (!json_path.empty()) write_json(json_path, o.json);
    return o.code;
  }
  Outcome o = guarded(make_job(fixture));
  if (o.code != kOk)
    std::cerr << o.text;
  else if (!json_to_stdout)
    std::cout << o.text;
  if (!json_path.empty() && !write_json(json_path, o.json)) return kInput;
  return o.code;
}
