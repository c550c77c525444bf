#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcsp/families.hpp"
#include "vcsp/operation.hpp"
#include "vcsp/tournament.hpp"
#include "vcsp/vcsp_core.hpp"

namespace vcsp {

/// Line-oriented problem text; `#` starts a comment.
///
///   domain <k>
///   labels <name_0> ... <name_{k-1}>
///   function <name> <arity>        followed by lines <t_1> ... <t_n> <value>
///   default <value>                inside a function block; otherwise inf
///   instance
///   vars <m> [<name_1> ... <name_m>]
///   term <function> <var> ...      variables by index or declared name
///   tournament <k>                 followed by lines <a> <b> for a -> b
///   tree <k>                       followed by one line of k parent labels
///   poset <k> <b> <c>              followed by k rows of k 0/1 entries (x < y)
///
/// Values are integers, p/q or inf. Labels may be given by name or index.
struct ProblemFile {
  std::optional<Language> language;
  std::optional<VcspInstance> instance;
  std::vector<std::string> variable_names;  ///< empty unless declared on `vars`
  std::optional<Tournament> tournament;
  std::optional<RootedTree> tree;
  std::optional<DefectPoset> poset;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Throws ParseError with the 1-based line and column of the offending token.
ProblemFile parse_problem_file(std::string_view text);

/// Canonical text; only finite table entries are listed.
std::string render_problem_file(const ProblemFile& problem);

/// Fractional operation text: an optional `domain <k>` line, then one line
/// `<weight> <table entries>` per support operation. The domain size comes
/// from the header, else `domain_size`, else the smallest base k >= 2 with
/// k^m equal to the table length.
FractionalOperation parse_fractional_operation(std::string_view text,
                                               std::optional<int> domain_size = std::nullopt);

/// One line per support operation in canonical order, optionally preceded by
/// a `domain <k>` line.
std::string render_fractional_operation(const FractionalOperation& omega,
                                        bool domain_header = false);

}  // namespace vcsp
