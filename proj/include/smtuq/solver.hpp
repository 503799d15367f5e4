#pragma once

#include <string>

#include "smtuq/consistency.hpp"

namespace smtuq {

struct SolverConfig {
  // Shell command reading an SMT-LIB program on standard input and printing
  // the check-sat result on standard output, e.g. "z3 -in".
  std::string command;
  double timeout_seconds = 10.0;
};

// Runs the configured solver on one program. The verdict is the first
// output line when it is sat/unsat/unknown; a nonzero exit is an error;
// exceeding the wall-clock cap kills the process and reports a timeout.
// Throws SolverNotFound and SpawnFailure.
SolverVerdict run_solver(const std::string& program, const SolverConfig& config);

}  // namespace smtuq
