#include "vcsp/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "vcsp/blp.hpp"
#include "vcsp/errors.hpp"
#include "vcsp/expansion.hpp"
#include "vcsp/polymorphism.hpp"
#include "vcsp/problem_file.hpp"
#include "vcsp/tournament.hpp"

namespace vcsp {

namespace {

/// Failure result that is not an input error.
struct NegativeResult {
  std::string text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ProblemFile load_problem(const std::string& path) {
  try {
    return parse_problem_file(read_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

FractionalOperation load_fpol(const std::string& path, std::optional<int> domain_size) {
  try {
    return parse_fractional_operation(read_file(path), domain_size);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

const Language& require_language(const ProblemFile& p, const std::string& path) {
  if (!p.language) throw std::runtime_error(path + ": no domain or functions declared");
  return *p.language;
}

const VcspInstance& require_instance(const ProblemFile& p, const std::string& path) {
  if (!p.instance) throw std::runtime_error(path + ": no instance block");
  return *p.instance;
}

std::string render_assignment(const Domain& domain, const Assignment& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ' ';
    out += domain.label_name(x[i]);
  }
  return out;
}

std::string render_tuple(const Domain& domain, const Tuple& t) {
  return "(" + render_assignment(domain, t) + ")";
}

std::string cmd_blp(const std::string& path) {
  const auto problem = load_problem(path);
  return blp_value(require_instance(problem, path)).value.str() + "\n";
}

std::string cmd_opt(const std::string& path) {
  const auto problem = load_problem(path);
  const auto& instance = require_instance(problem, path);
  const auto result = brute_force_optimum(instance);
  std::string out = result.value.str() + "\n";
  if (result.argmin) out += render_assignment(instance.language().domain(), *result.argmin) + "\n";
  return out;
}

std::string cmd_solve(const std::string& path) {
  const auto problem = load_problem(path);
  const auto& instance = require_instance(problem, path);
  const auto result = self_reduce(instance);
  if (!result) throw NegativeResult{"failure\n"};
  return result->value.str() + "\n" + render_assignment(instance.language().domain(), result->x) + "\n";
}

std::string cmd_fpol_find(const std::string& path, int arity) {
  const auto problem = load_problem(path);
  const auto omega = find_symmetric_fpol(require_language(problem, path), arity);
  if (!omega) throw NegativeResult{"infeasible\n"};
  return render_fractional_operation(*omega);
}

std::string cmd_fpol_check(const std::string& path, const std::string& wpath) {
  const auto problem = load_problem(path);
  const auto& language = require_language(problem, path);
  const auto omega = load_fpol(wpath, language.domain().size());
  const auto verdict = check_fractional_polymorphism(language, omega);
  if (verdict.holds()) return "holds\n";
  const auto& v = *verdict.violation;
  std::string text = "violated " + v.function;
  for (const auto& t : v.tuples) text += " " + render_tuple(language.domain(), t);
  text += ": lhs " + v.lhs.str() + " > rhs " + v.rhs.str() + "\n";
  throw NegativeResult{text};
}

std::string cmd_stp_acyclic(const std::string& path) {
  const auto problem = load_problem(path);
  if (!problem.tournament) throw std::runtime_error(path + ": no tournament block");
  const auto result = make_acyclic(*problem.tournament);
  if (!verify_flip_sequence(*problem.tournament, result.flips)) {
    throw std::logic_error("flip certificate failed to verify");
  }
  std::string out;
  for (const auto& [a, b] : result.flips) out += "flip " + std::to_string(a) + " " + std::to_string(b) + "\n";
  out += "order";
  for (Label a : result.order) out += " " + std::to_string(a);
  return out + "\n";
}

std::string cmd_expand(const std::string& wpath, int arity, const std::string& language_path,
                       bool allow_large) {
  ExpansionOptions options;
  options.allow_large = allow_large;
  std::optional<int> domain_size;
  if (!language_path.empty()) {
    const auto problem = load_problem(language_path);
    options.audit = require_language(problem, language_path);
    domain_size = options.audit->domain().size();
  }
  const auto omega = load_fpol(wpath, domain_size);
  if (options.audit) {
    const auto verdict = check_fractional_polymorphism(*options.audit, omega);
    if (!verdict.holds()) {
      throw std::runtime_error(wpath + ": not a fractional polymorphism of " + language_path);
    }
  }
  const auto result = expand_to_symmetric(omega, arity, options);
  return render_fractional_operation(result.omega);
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"Exact valued-CSP toolkit", "vcsp"};
  app.require_subcommand(1);

  std::string file;
  std::string wfile;
  std::string language_file;
  int arity = 0;
  bool allow_large = false;
  std::string output;

  auto* blp = app.add_subcommand("blp", "Print the BLP value of the instance");
  blp->add_option("FILE", file, "problem file")->required();
  auto* opt = app.add_subcommand("opt", "Print the exhaustive optimum and its argmin");
  opt->add_option("FILE", file, "problem file")->required();
  auto* solve = app.add_subcommand("solve", "Find an optimal assignment by self-reduction");
  solve->add_option("FILE", file, "problem file")->required();
  auto* find = app.add_subcommand("fpol-find", "Find a symmetric fractional polymorphism");
  find->add_option("FILE", file, "problem file")->required();
  find->add_option("--arity", arity, "arity m")->required()->check(CLI::Range(1, 16));
  auto* check = app.add_subcommand("fpol-check", "Check a fractional polymorphism");
  check->add_option("FILE", file, "problem file")->required();
  check->add_option("--fpol", wfile, "fractional operation file")->required();
  auto* stp = app.add_subcommand("stp-acyclic", "Make the tournament acyclic by valid flips");
  stp->add_option("FILE", file, "problem file")->required();
  auto* expand = app.add_subcommand("expand", "Expand a fractional operation to a symmetric one");
  expand->add_option("WFILE", wfile, "fractional operation file")->required();
  expand->add_option("--arity", arity, "target arity m")->required()->check(CLI::Range(1, 16));
  expand->add_option("--language", language_file, "audit against this language");
  expand->add_flag("--allow-large", allow_large, "lift the default scale limit");

  std::ostringstream out;
  std::ostringstream err;
  std::vector<std::string> storage{"vcsp"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str(), err.str()};
  }

  try {
    if (blp->parsed()) {
      output = cmd_blp(file);
    } else if (opt->parsed()) {
      output = cmd_opt(file);
    } else if (solve->parsed()) {
      output = cmd_solve(file);
    } else if (find->parsed()) {
      output = cmd_fpol_find(file, arity);
    } else if (check->parsed()) {
      output = cmd_fpol_check(file, wfile);
    } else if (stp->parsed()) {
      output = cmd_stp_acyclic(file);
    } else if (expand->parsed()) {
      output = cmd_expand(wfile, arity, language_file, allow_large);
    }
  } catch (const NegativeResult& r) {
    return {1, r.text, ""};
  } catch (const std::exception& e) {
    return {2, "", std::string("error: ") + e.what() + "\n"};
  }
  return {0, output, ""};
}

}  // namespace vcsp
