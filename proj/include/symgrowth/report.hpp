/**
 * Running a job: one command per job, a JSON report with frozen field
 * names and a plain-text rendering of the same data.
 *
 * Every report carries "command", "steps" and "checks"; commands that
 * compute Betti numbers add "betti_plus" (beta_0..beta_s) and "betti_minus"
 * (beta_{-1}..beta_{-s}) of the minimal complete resolution, and growth
 * commands add "poincare_plus", "poincare_minus", "cx_plus", "cx_minus" and
 * "symmetric".
 */
#pragma once

#include <string>

#include <json.hpp>

#include "symgrowth/job.hpp"

namespace symgrowth {

using Json = nlohmann::ordered_json;

struct Report {
  Json json;
  std::string text;
};

/// Replaces `fixture = NAME` by the fixture's ring and module; parameters set on the job win.
JobSpec resolve_fixture(const JobSpec& job);

/**
 * Runs the job's command. Errors propagate as InputError (bad job),
 * PreconditionError (the mathematics refuses, e.g. no G-dimension zero) and
 * InternalFault (a verification failed).
 */
Report run(const JobSpec& job);

std::string render_text(const Json& report);

/// {"error": {"kind", "message", "line", "column"}}; line and column are 0 when unknown.
Json error_json(const std::string& kind, const std::string& message, std::size_t line = 0, std::size_t column = 0);

}  // namespace symgrowth
