#include "ccs/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ccs/defs.hpp"

namespace ccs {

bool is_valid_name(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string to_string(const Label& l) {
  return l.polarity == Polarity::input ? l.name : "'" + l.name;
}

std::string to_string(const Action& u) {
  return u.is_tau() ? "t" : to_string(u.label());
}

Relabeling::Relabeling(std::map<Name, Name> mapping) : map_(std::move(mapping)) {
  for (auto it = map_.begin(); it != map_.end();) {
    if (it->first == it->second)
      it = map_.erase(it);
    else
      ++it;
  }
}

Name Relabeling::apply(const Name& n) const {
  auto it = map_.find(n);
  return it == map_.end() ? n : it->second;
}

Label relabel_label(const Relabeling& rf, const Label& l) {
  return Label(l.polarity, rf.apply(l.name));
}

Action relabel_action(const Relabeling& rf, const Action& u) {
  if (u.is_tau()) return u;
  return Action::visible(relabel_label(rf, u.label()));
}

// ---------------------------------------------------------------------------
// Process nodes

struct Process::Node {
  Kind kind = Kind::nil;
  Action act;
  Name name;
  std::set<Name> hidden;
  Relabeling relab;
  NodePtr a, b;
};

Process::Process() : node_(std::make_shared<const Node>()) {}

Process Process::nil() { return Process(); }

Process Process::var(Name n) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::var;
  node->name = std::move(n);
  return Process(std::move(node));
}

Process Process::prefix(Action u, Process body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::prefix;
  node->act = std::move(u);
  node->a = std::move(body.node_);
  return Process(std::move(node));
}

Process Process::sum(Process left, Process right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::sum;
  node->a = std::move(left.node_);
  node->b = std::move(right.node_);
  return Process(std::move(node));
}

Process Process::par(Process left, Process right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::par;
  node->a = std::move(left.node_);
  node->b = std::move(right.node_);
  return Process(std::move(node));
}

Process Process::restriction(std::set<Name> hidden, Process body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::restriction;
  node->hidden = std::move(hidden);
  node->a = std::move(body.node_);
  return Process(std::move(node));
}

Process Process::relabel(Process body, Relabeling rf) {
  if (rf.mapping().empty()) return body;  // identity relabeling is a no-op
  auto node = std::make_shared<Node>();
  node->kind = Kind::relabel;
  node->relab = std::move(rf);
  node->a = std::move(body.node_);
  return Process(std::move(node));
}

Process Process::rec(Name binder, Process body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::rec;
  node->name = std::move(binder);
  node->a = std::move(body.node_);
  return Process(std::move(node));
}

Process::Kind Process::kind() const { return node_->kind; }
const Name& Process::name() const { return node_->name; }
const Action& Process::action() const { return node_->act; }

Process Process::child() const { return Process(node_->a); }
Process Process::left() const { return Process(node_->a); }
Process Process::right() const { return Process(node_->b); }
const std::set<Name>& Process::hidden() const { return node_->hidden; }
const Relabeling& Process::relabeling() const { return node_->relab; }

bool deep_equal(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Process::Kind::nil:
      return true;
    case Process::Kind::var:
      return a.name() == b.name();
    case Process::Kind::prefix:
      return a.action() == b.action() && deep_equal(a.child(), b.child());
    case Process::Kind::sum:
    case Process::Kind::par:
      return deep_equal(a.left(), b.left()) && deep_equal(a.right(), b.right());
    case Process::Kind::restriction:
      return a.hidden() == b.hidden() && deep_equal(a.child(), b.child());
    case Process::Kind::relabel:
      return a.relabeling() == b.relabeling() && deep_equal(a.child(), b.child());
    case Process::Kind::rec:
      return a.name() == b.name() && deep_equal(a.child(), b.child());
  }
  return false;
}

bool Process::operator==(const Process& other) const {
  return deep_equal(canonical(*this), canonical(other));
}

// ---------------------------------------------------------------------------
// Free variables, substitution, canonical form

namespace {

void free_variables_into(const Process& p, std::set<Name>& bound, std::set<Name>& out) {
  switch (p.kind()) {
    case Process::Kind::nil:
      return;
    case Process::Kind::var:
      if (!bound.count(p.name())) out.insert(p.name());
      return;
    case Process::Kind::prefix:
    case Process::Kind::restriction:
    case Process::Kind::relabel:
      free_variables_into(p.child(), bound, out);
      return;
    case Process::Kind::sum:
    case Process::Kind::par:
      free_variables_into(p.left(), bound, out);
      free_variables_into(p.right(), bound, out);
      return;
    case Process::Kind::rec: {
      bool fresh = bound.insert(p.name()).second;
      free_variables_into(p.child(), bound, out);
      if (fresh) bound.erase(p.name());
      return;
    }
  }
}

}  // namespace

std::set<Name> free_variables(const Process& p) {
  std::set<Name> bound, out;
  free_variables_into(p, bound, out);
  return out;
}

bool is_closed(const Process& p) { return free_variables(p).empty(); }

namespace {

Process substitute_impl(const Process& p, const Name& var, const Process& value,
                        const std::set<Name>& value_fv) {
  switch (p.kind()) {
    case Process::Kind::nil:
      return p;
    case Process::Kind::var:
      return p.name() == var ? value : p;
    case Process::Kind::prefix:
      return Process::prefix(p.action(), substitute_impl(p.child(), var, value, value_fv));
    case Process::Kind::sum:
      return Process::sum(substitute_impl(p.left(), var, value, value_fv),
                          substitute_impl(p.right(), var, value, value_fv));
    case Process::Kind::par:
      return Process::par(substitute_impl(p.left(), var, value, value_fv),
                          substitute_impl(p.right(), var, value, value_fv));
    case Process::Kind::restriction:
      return Process::restriction(p.hidden(), substitute_impl(p.child(), var, value, value_fv));
    case Process::Kind::relabel:
      return Process::relabel(substitute_impl(p.child(), var, value, value_fv), p.relabeling());
    case Process::Kind::rec: {
      if (p.name() == var) return p;  // shadowed
      if (value_fv.count(p.name()) && free_variables(p.child()).count(var))
        throw CaptureError("substituting an open term under binder '" + p.name() +
                           "' would capture its free variable");
      return Process::rec(p.name(), substitute_impl(p.child(), var, value, value_fv));
    }
  }
  return p;
}

}  // namespace

Process substitute(const Process& body, const Name& var, const Process& value) {
  return substitute_impl(body, var, value, free_variables(value));
}

namespace {

struct Canonicalizer {
  const std::set<Name>& avoid;
  int counter = 0;

  Name fresh() {
    for (;;) {
      Name candidate = "V" + std::to_string(counter++);
      if (!avoid.count(candidate)) return candidate;
    }
  }

  Process go(const Process& p, std::map<Name, Name>& env) {
    switch (p.kind()) {
      case Process::Kind::nil:
        return p;
      case Process::Kind::var: {
        auto it = env.find(p.name());
        return it == env.end() ? p : Process::var(it->second);
      }
      case Process::Kind::prefix:
        return Process::prefix(p.action(), go(p.child(), env));
      case Process::Kind::sum:
        return Process::sum(go(p.left(), env), go(p.right(), env));
      case Process::Kind::par:
        return Process::par(go(p.left(), env), go(p.right(), env));
      case Process::Kind::restriction:
        return Process::restriction(p.hidden(), go(p.child(), env));
      case Process::Kind::relabel:
        return Process::relabel(go(p.child(), env), p.relabeling());
      case Process::Kind::rec: {
        Name renamed = fresh();
        auto it = env.find(p.name());
        std::optional<Name> saved;
        if (it != env.end()) saved = it->second;
        env[p.name()] = renamed;
        Process body = go(p.child(), env);
        if (saved)
          env[p.name()] = *saved;
        else
          env.erase(p.name());
        return Process::rec(renamed, std::move(body));
      }
    }
    return p;
  }
};

}  // namespace

Process canonical(const Process& p) {
  std::set<Name> fv = free_variables(p);
  Canonicalizer c{fv};
  std::map<Name, Name> env;
  return c.go(p, env);
}

std::string structural_key(const Process& p) { return pretty(canonical(p)); }

namespace {

void collect_names(const Process& p, std::set<Name>& channels, std::set<Name>* vars) {
  switch (p.kind()) {
    case Process::Kind::nil:
      return;
    case Process::Kind::var:
      if (vars) vars->insert(p.name());
      return;
    case Process::Kind::prefix:
      if (p.action().is_visible()) channels.insert(p.action().label().name);
      collect_names(p.child(), channels, vars);
      return;
    case Process::Kind::sum:
    case Process::Kind::par:
      collect_names(p.left(), channels, vars);
      collect_names(p.right(), channels, vars);
      return;
    case Process::Kind::restriction:
      channels.insert(p.hidden().begin(), p.hidden().end());
      collect_names(p.child(), channels, vars);
      return;
    case Process::Kind::relabel:
      for (const auto& [from, to] : p.relabeling().mapping()) {
        channels.insert(from);
        channels.insert(to);
      }
      collect_names(p.child(), channels, vars);
      return;
    case Process::Kind::rec:
      if (vars) vars->insert(p.name());
      collect_names(p.child(), channels, vars);
      return;
  }
}

}  // namespace

std::set<Name> channel_names(const Process& p) {
  std::set<Name> channels;
  collect_names(p, channels, nullptr);
  return channels;
}

std::set<Name> all_names(const Process& p) {
  std::set<Name> channels, vars;
  collect_names(p, channels, &vars);
  channels.insert(vars.begin(), vars.end());
  return channels;
}

// ---------------------------------------------------------------------------
// Pretty printer
//
// Levels mirror the grammar: sum(0) < par(1) < postfix(2) < prefix(3) < atom(4).

namespace {

int natural_level(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::sum:
      return 0;
    case Process::Kind::par:
      return 1;
    case Process::Kind::relabel:
      return 2;
    case Process::Kind::prefix:
      return 3;
    default:
      return 4;
  }
}

// True if the printed form ends in a nu/rec body, which would greedily
// absorb a following [..] postfix on reparse.
bool absorbs_postfix(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::restriction:
    case Process::Kind::rec:
      return true;
    case Process::Kind::prefix:
      return absorbs_postfix(p.child());
    default:
      return false;
  }
}

std::string relabeling_text(const Relabeling& rf) {
  std::string out = "[";
  bool first = true;
  for (const auto& [from, to] : rf.mapping()) {
    if (!first) out += ", ";
    first = false;
    out += to + "/" + from;
  }
  out += "]";
  return out;
}

void render(const Process& p, int min_level, std::string& out) {
  if (natural_level(p) < min_level) {
    out += "(";
    render(p, 0, out);
    out += ")";
    return;
  }
  switch (p.kind()) {
    case Process::Kind::nil:
      out += "0";
      return;
    case Process::Kind::var:
      out += p.name();
      return;
    case Process::Kind::sum:
      render(p.left(), 0, out);
      out += " + ";
      render(p.right(), 1, out);
      return;
    case Process::Kind::par:
      render(p.left(), 1, out);
      out += " | ";
      render(p.right(), 2, out);
      return;
    case Process::Kind::relabel:
      if (absorbs_postfix(p.child())) {
        out += "(";
        render(p.child(), 0, out);
        out += ")";
      } else {
        render(p.child(), 2, out);
      }
      out += relabeling_text(p.relabeling());
      return;
    case Process::Kind::prefix:
      out += to_string(p.action());
      out += ".";
      render(p.child(), 3, out);
      return;
    case Process::Kind::restriction: {
      out += "nu {";
      bool first = true;
      for (const Name& n : p.hidden()) {
        if (!first) out += ", ";
        first = false;
        out += n;
      }
      out += "} ";
      render(p.child(), 2, out);
      return;
    }
    case Process::Kind::rec:
      out += "rec " + p.name() + ". ";
      render(p.child(), 2, out);
      return;
  }
}

}  // namespace

std::string pretty(const Process& p) {
  std::string out;
  render(p, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

enum class Tok {
  ident,
  zero,
  dot,
  plus,
  bar,
  quote,
  lparen,
  rparen,
  lbrace,
  rbrace,
  lbracket,
  rbracket,
  slash,
  comma,
  equals,
  semi,
  hole,
  end,
};

std::string tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::zero: return "'0'";
    case Tok::dot: return "'.'";
    case Tok::plus: return "'+'";
    case Tok::bar: return "'|'";
    case Tok::quote: return "'''";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::slash: return "'/'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::semi: return "';'";
    case Tok::hole: return "'_'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '0': kind = Tok::zero; break;
      case '.': kind = Tok::dot; break;
      case '+': kind = Tok::plus; break;
      case '|': kind = Tok::bar; break;
      case '\'': kind = Tok::quote; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '{': kind = Tok::lbrace; break;
      case '}': kind = Tok::rbrace; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case '/': kind = Tok::slash; break;
      case ',': kind = Tok::comma; break;
      case '=': kind = Tok::equals; break;
      case ';': kind = Tok::semi; break;
      case '_': kind = Tok::hole; break;
      default:
        throw SyntaxError(tl, tc, "a token", "'" + std::string(1, c) + "'");
    }
    out.push_back({kind, std::string(1, c), tl, tc});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, bool allow_hole)
      : tokens_(std::move(tokens)), allow_hole_(allow_hole) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  Token take() {
    Token t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return take();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, expected, found);
  }

  bool at_end() const { return peek().kind == Tok::end; }

  Process parse_proc() { return parse_sum(); }

  Process parse_sum() {
    Process p = parse_par();
    while (peek().kind == Tok::plus) {
      take();
      p = Process::sum(std::move(p), parse_par());
    }
    return p;
  }

  Process parse_par() {
    Process p = parse_unary();
    while (peek().kind == Tok::bar) {
      take();
      p = Process::par(std::move(p), parse_unary());
    }
    return p;
  }

  Process parse_unary() {
    std::vector<Action> prefixes;
    for (;;) {
      if (peek().kind == Tok::quote) {
        take();
        Token n = expect(Tok::ident, "a channel name after '''");
        expect(Tok::dot, "'.' after output action");
        prefixes.push_back(Action::output(n.text));
        continue;
      }
      if (peek().kind == Tok::ident && peek(1).kind == Tok::dot && peek().text != "rec" &&
          peek().text != "nu") {
        Token n = take();
        take();  // dot
        prefixes.push_back(n.text == "t" ? Action::make_tau() : Action::input(n.text));
        continue;
      }
      break;
    }
    Process core = parse_atom();
    for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it)
      core = Process::prefix(*it, std::move(core));
    while (peek().kind == Tok::lbracket) core = Process::relabel(std::move(core), parse_relabeling());
    return core;
  }

  Relabeling parse_relabeling() {
    expect(Tok::lbracket, "'['");
    std::map<Name, Name> mapping;
    for (;;) {
      Token to = expect(Tok::ident, "a name in relabeling");
      expect(Tok::slash, "'/' in relabeling");
      Token from = expect(Tok::ident, "a name in relabeling");
      if (mapping.count(from.text))
        throw UnboundConstructError("relabeling maps '" + from.text + "' twice");
      mapping[from.text] = to.text;
      if (peek().kind == Tok::comma) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::rbracket, "']'");
    return Relabeling(std::move(mapping));
  }

  Process parse_atom() {
    switch (peek().kind) {
      case Tok::zero:
        take();
        return Process::nil();
      case Tok::lparen: {
        take();
        Process p = parse_proc();
        expect(Tok::rparen, "')'");
        return p;
      }
      case Tok::hole:
        if (!allow_hole_) fail("a process");
        take();
        return Process::var(hole_marker());
      case Tok::ident: {
        Token t = take();
        if (t.text == "nu") {
          expect(Tok::lbrace, "'{' after nu");
          std::set<Name> hidden;
          hidden.insert(expect(Tok::ident, "a name in restriction set").text);
          while (peek().kind == Tok::comma) {
            take();
            hidden.insert(expect(Tok::ident, "a name in restriction set").text);
          }
          expect(Tok::rbrace, "'}'");
          return Process::restriction(std::move(hidden), parse_unary());
        }
        if (t.text == "rec") {
          Token binder = expect(Tok::ident, "a binder after rec");
          expect(Tok::dot, "'.' after rec binder");
          return Process::rec(binder.text, parse_unary());
        }
        return Process::var(t.text);
      }
      default:
        fail("a process");
    }
  }

  static Name hole_marker() { return "_"; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool allow_hole_;
};

}  // namespace

Process parse(std::string_view text) {
  Parser parser(lex(text), /*allow_hole=*/false);
  Process p = parser.parse_proc();
  if (!parser.at_end()) parser.fail("end of input");
  return p;
}

namespace detail {

// Contexts reuse the process grammar with '_' for holes; the hole is
// carried as a variable named "_" (not a valid identifier, so it cannot
// clash with user names).
Process parse_allowing_holes(std::string_view text) {
  Parser parser(lex(text), /*allow_hole=*/true);
  Process p = parser.parse_proc();
  if (!parser.at_end()) parser.fail("end of input");
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Definition files

const Process& Definitions::resolve(const Name& n) const {
  auto it = agents.find(n);
  if (it == agents.end()) throw DefinitionError("undefined agent '" + n + "'");
  return it->second;
}

Definitions load_definitions(std::string_view text) {
  Parser parser(lex(text), /*allow_hole=*/false);
  Definitions defs;
  while (!parser.at_end()) {
    Token kw = parser.expect(Tok::ident, "'agent'");
    if (kw.text != "agent")
      throw SyntaxError(kw.line, kw.col, "'agent'", "'" + kw.text + "'");
    Token name = parser.expect(Tok::ident, "an agent name");
    if (defs.defined(name.text))
      throw DefinitionError("agent '" + name.text + "' defined twice");
    parser.expect(Tok::equals, "'='");
    Process body = parser.parse_proc();
    parser.expect(Tok::semi, "';'");

    for (const Name& fv : free_variables(body)) {
      if (fv == name.text) continue;
      if (!defs.defined(fv))
        throw DefinitionError("agent '" + name.text + "' references undefined '" + fv +
                              "' (mutual recursion is not supported)");
      body = substitute(body, fv, defs.agents.at(fv));
    }
    if (free_variables(body).count(name.text)) body = Process::rec(name.text, std::move(body));

    defs.order.push_back(name.text);
    defs.agents.emplace(name.text, std::move(body));
  }
  return defs;
}

}  // namespace ccs
