#include "vcsp/problem_file.hpp"

#include <map>
#include <set>
#include <sstream>

#include "vcsp/errors.hpp"

namespace vcsp {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t begin = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > begin) line.tokens.push_back({std::string(raw.substr(begin, i - begin)), begin + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const Token& token, const std::string& message) {
  throw ParseError(line.number, token.column, message);
}

[[noreturn]] void fail(const Line& line, const std::string& message) {
  throw ParseError(line.number, 1, message);
}

long parse_count(const Line& line, const Token& token, long lo, long hi, const char* what) {
  long value = 0;
  try {
    std::size_t used = 0;
    value = std::stol(token.text, &used);
    if (used != token.text.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    fail(line, token, std::string("expected an integer ") + what + ", got '" + token.text + "'");
  }
  if (value < lo || value > hi) {
    fail(line, token, std::string(what) + " " + token.text + " out of range " + std::to_string(lo) +
                          ".." + std::to_string(hi));
  }
  return value;
}

ExtRational parse_value(const Line& line, const Token& token) {
  try {
    return ExtRational::parse(token.text);
  } catch (const std::exception&) {
    fail(line, token, "malformed value '" + token.text + "'");
  }
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-' && ch != '.') return false;
  }
  return true;
}

const std::set<std::string> kKeywords = {"domain", "labels",     "function", "default", "instance",
                                         "vars",   "term",       "tournament", "tree",  "poset"};

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  ProblemFile run() {
    for (const auto& line : lines_) {
      const std::string& head = line.tokens[0].text;
      if (kKeywords.contains(head)) {
        directive(line);
      } else {
        data_line(line);
      }
    }
    close_block();
    return finish();
  }

 private:
  enum class Block { None, Function, Instance, Tournament, Tree, Poset };

  struct PendingFunction {
    std::string name;
    int arity;
    std::map<std::size_t, ExtRational> values;
    ExtRational fallback = ExtRational::infinity();
    bool has_default = false;
  };

  struct PendingTerm {
    Line line;
    std::string function;
    std::vector<Token> args;
  };

  void directive(const Line& line) {
    const std::string& head = line.tokens[0].text;
    if (head == "default") {
      if (block_ != Block::Function) fail(line, line.tokens[0], "'default' outside a function block");
      expect_args(line, 1);
      if (function_->has_default) fail(line, line.tokens[0], "duplicate 'default'");
      function_->fallback = parse_value(line, line.tokens[1]);
      function_->has_default = true;
      return;
    }
    if (head == "vars") {
      if (block_ != Block::Instance) fail(line, line.tokens[0], "'vars' outside an instance block");
      if (var_count_) fail(line, line.tokens[0], "duplicate 'vars'");
      if (line.tokens.size() < 2) fail(line, line.tokens[0], "'vars' needs a count");
      var_count_ = static_cast<std::size_t>(parse_count(line, line.tokens[1], 0, 1'000'000, "variable count"));
      if (line.tokens.size() > 2) {
        if (line.tokens.size() - 2 != *var_count_) {
          fail(line, line.tokens[2], "expected " + std::to_string(*var_count_) + " variable names");
        }
        for (std::size_t i = 2; i < line.tokens.size(); ++i) {
          const auto& t = line.tokens[i];
          if (!is_identifier(t.text)) fail(line, t, "variable names must start with a letter");
          for (const auto& seen : variable_names_) {
            if (seen == t.text) fail(line, t, "duplicate variable name '" + t.text + "'");
          }
          variable_names_.push_back(t.text);
        }
      }
      return;
    }
    if (head == "term") {
      if (block_ != Block::Instance) fail(line, line.tokens[0], "'term' outside an instance block");
      if (!var_count_) fail(line, line.tokens[0], "'term' before 'vars'");
      if (line.tokens.size() < 3) fail(line, line.tokens[0], "'term' needs a function and a scope");
      terms_.push_back({line, line.tokens[1].text,
                        std::vector<Token>(line.tokens.begin() + 2, line.tokens.end())});
      return;
    }

    close_block();
    if (head == "domain") {
      expect_args(line, 1);
      if (domain_) fail(line, line.tokens[0], "duplicate 'domain'");
      domain_ = Domain(static_cast<int>(parse_count(line, line.tokens[1], 1, kMaxDomainSize, "domain size")));
      language_ = Language(*domain_);
    } else if (head == "labels") {
      if (!domain_) fail(line, line.tokens[0], "'labels' before 'domain'");
      if (labels_set_) fail(line, line.tokens[0], "duplicate 'labels'");
      if (!language_->functions().empty()) fail(line, line.tokens[0], "'labels' after a function");
      if (line.tokens.size() - 1 != static_cast<std::size_t>(domain_->size())) {
        fail(line, line.tokens[0], "expected " + std::to_string(domain_->size()) + " label names");
      }
      std::vector<std::string> names;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        for (const auto& n : names) {
          if (n == line.tokens[i].text) fail(line, line.tokens[i], "duplicate label '" + n + "'");
        }
        names.push_back(line.tokens[i].text);
      }
      domain_ = Domain(std::move(names));
      language_ = Language(*domain_);
      labels_set_ = true;
    } else if (head == "function") {
      if (!domain_) fail(line, line.tokens[0], "'function' before 'domain'");
      expect_args(line, 2);
      const auto& name = line.tokens[1];
      if (!is_identifier(name.text)) fail(line, name, "function names must start with a letter");
      if (language_->find(name.text)) fail(line, name, "duplicate function '" + name.text + "'");
      const int arity = static_cast<int>(parse_count(line, line.tokens[2], 1, 16, "arity"));
      try {
        checked_power(static_cast<std::size_t>(domain_->size()), static_cast<std::size_t>(arity), 10'000'000);
      } catch (const CapExceeded&) {
        fail(line, line.tokens[2], "function table too large");
      }
      function_ = PendingFunction{name.text, arity, {}, ExtRational::infinity(), false};
      block_ = Block::Function;
    } else if (head == "instance") {
      expect_args(line, 0);
      if (instance_seen_) fail(line, line.tokens[0], "duplicate 'instance'");
      instance_seen_ = true;
      instance_line_ = line.number;
      block_ = Block::Instance;
    } else if (head == "tournament") {
      expect_args(line, 1);
      if (tournament_size_) fail(line, line.tokens[0], "duplicate 'tournament'");
      tournament_size_ = static_cast<int>(parse_count(line, line.tokens[1], 1, kMaxDomainSize, "tournament size"));
      tournament_line_ = line;
      block_ = Block::Tournament;
    } else if (head == "tree") {
      expect_args(line, 1);
      if (tree_size_) fail(line, line.tokens[0], "duplicate 'tree'");
      tree_size_ = static_cast<int>(parse_count(line, line.tokens[1], 1, kMaxDomainSize, "tree size"));
      tree_line_ = line;
      block_ = Block::Tree;
    } else if (head == "poset") {
      expect_args(line, 3);
      if (poset_size_) fail(line, line.tokens[0], "duplicate 'poset'");
      poset_size_ = static_cast<int>(parse_count(line, line.tokens[1], 2, kMaxDomainSize, "poset size"));
      poset_b_ = label(line, line.tokens[2], *poset_size_);
      poset_c_ = label(line, line.tokens[3], *poset_size_);
      poset_line_ = line;
      block_ = Block::Poset;
    }
  }

  void data_line(const Line& line) {
    switch (block_) {
      case Block::Function: {
        const std::size_t n = static_cast<std::size_t>(function_->arity);
        if (line.tokens.size() != n + 1) {
          fail(line, line.tokens[0], "expected " + std::to_string(n) + " labels and a value");
        }
        Tuple t;
        for (std::size_t i = 0; i < n; ++i) t.push_back(label(line, line.tokens[i], domain_->size()));
        const std::size_t index = TupleSpace(domain_->size(), function_->arity).index_of(t);
        if (!function_->values.emplace(index, parse_value(line, line.tokens[n])).second) {
          fail(line, line.tokens[0], "duplicate tuple in function '" + function_->name + "'");
        }
        return;
      }
      case Block::Tournament: {
        if (line.tokens.size() != 2) fail(line, line.tokens[0], "expected an edge 'a b'");
        edges_.emplace_back(label(line, line.tokens[0], *tournament_size_),
                            label(line, line.tokens[1], *tournament_size_));
        return;
      }
      case Block::Tree: {
        if (parents_) fail(line, line.tokens[0], "the tree block takes a single parent line");
        if (line.tokens.size() != static_cast<std::size_t>(*tree_size_)) {
          fail(line, line.tokens[0], "expected " + std::to_string(*tree_size_) + " parent labels");
        }
        std::vector<Label> parents;
        for (const auto& t : line.tokens) parents.push_back(label(line, t, *tree_size_));
        parents_ = std::move(parents);
        return;
      }
      case Block::Poset: {
        if (line.tokens.size() != static_cast<std::size_t>(*poset_size_)) {
          fail(line, line.tokens[0], "expected " + std::to_string(*poset_size_) + " entries");
        }
        if (poset_rows_.size() == static_cast<std::size_t>(*poset_size_)) {
          fail(line, line.tokens[0], "too many poset rows");
        }
        std::vector<bool> row;
        for (const auto& t : line.tokens) {
          if (t.text != "0" && t.text != "1") fail(line, t, "poset entries must be 0 or 1");
          row.push_back(t.text == "1");
        }
        poset_rows_.push_back(std::move(row));
        return;
      }
      default:
        fail(line, line.tokens[0], "unknown directive '" + line.tokens[0].text + "'");
    }
  }

  void close_block() {
    if (block_ == Block::Function) {
      const auto& pf = *function_;
      TupleSpace space(domain_->size(), pf.arity);
      std::vector<ExtRational> table(space.size(), pf.fallback);
      for (const auto& [index, value] : pf.values) table[index] = value;
      language_->add(pf.name, CostFunction(domain_->size(), pf.arity, std::move(table)));
      function_.reset();
    }
    block_ = Block::None;
  }

  ProblemFile finish() {
    ProblemFile out;
    out.language = language_;
    if (instance_seen_) {
      const Line at{instance_line_, {}};
      if (!language_) fail(at, "'instance' needs a domain and functions");
      if (!var_count_) fail(at, "'instance' block without 'vars'");
      std::vector<Term> terms;
      for (const auto& pt : terms_) {
        auto index = language_->find(pt.function);
        if (!index) fail(pt.line, pt.line.tokens[1], "unknown function '" + pt.function + "'");
        const int arity = language_->functions()[*index].function.arity();
        if (pt.args.size() != static_cast<std::size_t>(arity)) {
          fail(pt.line, pt.line.tokens[1], "arity mismatch: '" + pt.function + "' takes " +
                                               std::to_string(arity) + " arguments, got " +
                                               std::to_string(pt.args.size()));
        }
        Term term{pt.function, {}};
        for (const auto& arg : pt.args) term.scope.push_back(variable(pt.line, arg));
        terms.push_back(std::move(term));
      }
      out.instance = VcspInstance(*language_, *var_count_, std::move(terms));
      out.variable_names = variable_names_;
    }
    try {
      if (tournament_size_) out.tournament = Tournament(*tournament_size_, edges_);
    } catch (const std::invalid_argument& e) {
      fail(*tournament_line_, e.what());
    }
    try {
      if (tree_size_) {
        if (!parents_) fail(*tree_line_, "tree block without a parent line");
        out.tree = RootedTree(*parents_);
      }
    } catch (const std::invalid_argument& e) {
      fail(*tree_line_, e.what());
    }
    try {
      if (poset_size_) {
        if (poset_rows_.size() != static_cast<std::size_t>(*poset_size_)) {
          fail(*poset_line_, "poset block needs " + std::to_string(*poset_size_) + " rows");
        }
        out.poset = DefectPoset(*poset_size_, poset_b_, poset_c_, poset_rows_);
      }
    } catch (const std::invalid_argument& e) {
      fail(*poset_line_, e.what());
    }
    return out;
  }

  void expect_args(const Line& line, std::size_t n) {
    if (line.tokens.size() != n + 1) {
      fail(line, line.tokens[0], "'" + line.tokens[0].text + "' takes " + std::to_string(n) +
                                     " argument" + (n == 1 ? "" : "s"));
    }
  }

  Label label(const Line& line, const Token& token, int size) {
    if (domain_ && domain_->size() == size) {
      if (auto found = domain_->find_label(token.text)) return *found;
      if (labels_set_) fail(line, token, "unknown label '" + token.text + "'");
    }
    return static_cast<Label>(parse_count(line, token, 0, size - 1, "label"));
  }

  std::size_t variable(const Line& line, const Token& token) {
    for (std::size_t i = 0; i < variable_names_.size(); ++i) {
      if (variable_names_[i] == token.text) return i;
    }
    if (*var_count_ == 0) fail(line, token, "instance has no variables");
    return static_cast<std::size_t>(parse_count(line, token, 0, static_cast<long>(*var_count_) - 1, "variable"));
  }

  std::vector<Line> lines_;
  Block block_ = Block::None;
  std::optional<Domain> domain_;
  std::optional<Language> language_;
  bool labels_set_ = false;
  std::optional<PendingFunction> function_;
  bool instance_seen_ = false;
  std::size_t instance_line_ = 0;
  std::optional<std::size_t> var_count_;
  std::vector<std::string> variable_names_;
  std::vector<PendingTerm> terms_;
  std::optional<int> tournament_size_;
  std::optional<Line> tournament_line_;
  std::vector<Edge> edges_;
  std::optional<int> tree_size_;
  std::optional<Line> tree_line_;
  std::optional<std::vector<Label>> parents_;
  std::optional<int> poset_size_;
  std::optional<Line> poset_line_;
  Label poset_b_ = 0;
  Label poset_c_ = 0;
  std::vector<std::vector<bool>> poset_rows_;
};

}  // namespace

ProblemFile parse_problem_file(std::string_view text) { return Parser(text).run(); }

std::string render_problem_file(const ProblemFile& problem) {
  std::ostringstream out;
  if (problem.language) {
    const auto& domain = problem.language->domain();
    out << "domain " << domain.size() << "\n";
    if (domain.has_custom_names()) {
      out << "labels";
      for (const auto& n : domain.label_names()) out << ' ' << n;
      out << "\n";
    }
    for (const auto& [name, f] : problem.language->functions()) {
      out << "function " << name << ' ' << f.arity() << "\n";
      for (std::size_t i : f.dom()) {
        for (Label v : f.space().tuple_at(i)) out << domain.label_name(v) << ' ';
        out << f.at(i).str() << "\n";
      }
    }
  }
  if (problem.instance) {
    const auto& names = problem.variable_names;
    out << "instance\n";
    out << "vars " << problem.instance->var_count();
    for (const auto& n : names) out << ' ' << n;
    out << "\n";
    for (const auto& term : problem.instance->terms()) {
      out << "term " << term.function;
      for (std::size_t v : term.scope) {
        out << ' ';
        if (names.empty()) {
          out << v;
        } else {
          out << names[v];
        }
      }
      out << "\n";
    }
  }
  if (problem.tournament) {
    out << "tournament " << problem.tournament->size() << "\n";
    for (const auto& [a, b] : problem.tournament->edges()) out << int(a) << ' ' << int(b) << "\n";
  }
  if (problem.tree) {
    out << "tree " << problem.tree->size() << "\n";
    for (int i = 0; i < problem.tree->size(); ++i) {
      out << (i ? " " : "") << int(problem.tree->parent(static_cast<Label>(i)));
    }
    out << "\n";
  }
  if (problem.poset) {
    const auto& p = *problem.poset;
    out << "poset " << p.size() << ' ' << int(p.b()) << ' ' << int(p.c()) << "\n";
    for (const auto& row : p.relation()) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << (row[j] ? 1 : 0);
      out << "\n";
    }
  }
  return out.str();
}

FractionalOperation parse_fractional_operation(std::string_view text,
                                               std::optional<int> domain_size) {
  const auto lines = tokenize(text);
  std::optional<int> k;
  std::vector<const Line*> rows;
  for (const auto& line : lines) {
    if (line.tokens[0].text == "domain") {
      if (k || !rows.empty()) fail(line, line.tokens[0], "'domain' must come first, once");
      if (line.tokens.size() != 2) fail(line, line.tokens[0], "'domain' takes 1 argument");
      k = static_cast<int>(parse_count(line, line.tokens[1], 1, kMaxDomainSize, "domain size"));
      continue;
    }
    if (line.tokens.size() < 2) fail(line, line.tokens[0], "expected a weight and a table");
    rows.push_back(&line);
  }
  if (rows.empty()) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "no operations given");
  const std::size_t length = rows.front()->tokens.size() - 1;
  for (const auto* row : rows) {
    if (row->tokens.size() - 1 != length) {
      fail(*row, row->tokens[1], "all tables must have " + std::to_string(length) + " entries");
    }
  }
  if (!k) k = domain_size;
  if (!k) {
    if (length == 1) {
      k = 1;
    } else {
      for (int base = 2; base <= kMaxDomainSize && !k; ++base) {
        for (std::size_t p = static_cast<std::size_t>(base); p <= length; p *= base) {
          if (p == length) {
            k = base;
            break;
          }
        }
      }
    }
  }
  int arity = 0;
  if (k) {
    if (*k == 1) {
      arity = 1;
    } else {
      std::size_t p = 1;
      while (p < length) {
        p *= static_cast<std::size_t>(*k);
        ++arity;
      }
      if (p != length || arity == 0) arity = 0;
    }
  }
  if (!k || arity == 0 || (*k == 1 && length != 1)) {
    fail(*rows.front(), rows.front()->tokens[1],
         "table length " + std::to_string(length) + " is not a power of the domain size");
  }

  FractionalOperation::Weights weights;
  for (const auto* row : rows) {
    const auto& w = row->tokens[0];
    Rational weight;
    try {
      weight = parse_rational(w.text);
    } catch (const std::exception&) {
      fail(*row, w, "malformed weight '" + w.text + "'");
    }
    if (sgn(weight) <= 0) fail(*row, w, "weights must be positive");
    std::vector<Label> table;
    for (std::size_t i = 1; i < row->tokens.size(); ++i) {
      table.push_back(static_cast<Label>(parse_count(*row, row->tokens[i], 0, *k - 1, "label")));
    }
    Operation g(*k, arity, std::move(table));
    if (!weights.emplace(std::move(g), weight).second) fail(*row, w, "duplicate operation");
  }
  try {
    return FractionalOperation(std::move(weights));
  } catch (const std::invalid_argument& e) {
    fail(*rows.front(), e.what());
  }
}

std::string render_fractional_operation(const FractionalOperation& omega, bool domain_header) {
  std::string out;
  if (domain_header) out += "domain " + std::to_string(omega.domain_size()) + "\n";
  for (const auto& [g, w] : omega.weights()) out += to_string(w) + " " + g.str() + "\n";
  return out;
}

}  // namespace vcsp
