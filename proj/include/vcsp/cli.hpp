#pragma once

#include <string>
#include <vector>

namespace vcsp {

struct CommandResult {
  int exit_code = 0;  ///< 0 success, 1 infeasible or failed result, 2 input error
  std::string out;
  std::string err;
};

/// Runs one subcommand; `args` excludes the program name.
///
///   blp FILE                     BLP value
///   opt FILE                     oracle value, then the argmin labels
///   solve FILE                   self-reduction value, then the assignment
///   fpol-find FILE --arity M     symmetric fractional polymorphism or `infeasible`
///   fpol-check FILE --fpol WFILE `holds` or the first violation
///   stp-acyclic FILE             flips making the tournament acyclic, then its order
///   expand WFILE --arity M       symmetric fractional operation by expansion
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace vcsp
