#include "ibu/formula.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "ibu/error.hpp"

namespace ibu {

Formula Formula::top() {
  static const Formula f = [] {
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Top;
    return Formula(std::move(node));
  }();
  return f;
}

Formula Formula::bot() {
  static const Formula f = [] {
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Bot;
    return Formula(std::move(node));
  }();
  return f;
}

Formula Formula::atom(const Alphabet& alphabet, std::string_view name) {
  const auto index = alphabet.index_of(name);
  if (!index) throw Error("unknown atom '" + std::string(name) + "'");
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Atom;
  node->atom_index = *index;
  node->atom_name = std::string(name);
  return Formula(std::move(node));
}

Formula Formula::operator!() const {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Not;
  node->lhs = node_;
  return Formula(std::move(node));
}

Formula Formula::binary(FormulaKind kind, const Formula& lhs,
                        const Formula& rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->lhs = lhs.node_;
  node->rhs = rhs.node_;
  return Formula(std::move(node));
}

Formula Formula::operator&(const Formula& rhs) const {
  return binary(FormulaKind::And, *this, rhs);
}

Formula Formula::operator|(const Formula& rhs) const {
  return binary(FormulaKind::Or, *this, rhs);
}

Formula Formula::implies(const Formula& lhs, const Formula& rhs) {
  return binary(FormulaKind::Implies, lhs, rhs);
}

Formula Formula::iff(const Formula& lhs, const Formula& rhs) {
  return binary(FormulaKind::Iff, lhs, rhs);
}

bool Formula::evaluate(World w, const Alphabet& alphabet) const {
  switch (node_->kind) {
    case FormulaKind::Top: return true;
    case FormulaKind::Bot: return false;
    case FormulaKind::Atom:
      if (node_->atom_index >= alphabet.size() ||
          alphabet.atom_name(node_->atom_index) != node_->atom_name)
        throw Error("atom '" + node_->atom_name +
                    "' does not belong to this alphabet");
      return alphabet.atom_true_in(w, node_->atom_index);
    case FormulaKind::Not: return !lhs().evaluate(w, alphabet);
    case FormulaKind::And:
      return lhs().evaluate(w, alphabet) && rhs().evaluate(w, alphabet);
    case FormulaKind::Or:
      return lhs().evaluate(w, alphabet) || rhs().evaluate(w, alphabet);
    case FormulaKind::Implies:
      return !lhs().evaluate(w, alphabet) || rhs().evaluate(w, alphabet);
    case FormulaKind::Iff:
      return lhs().evaluate(w, alphabet) == rhs().evaluate(w, alphabet);
  }
  throw Error("corrupt formula node");
}

bool Formula::identical_to(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case FormulaKind::Top:
    case FormulaKind::Bot: return true;
    case FormulaKind::Atom: return node_->atom_name == o.node_->atom_name;
    case FormulaKind::Not: return lhs().identical_to(o.lhs());
    default:
      return lhs().identical_to(o.lhs()) && rhs().identical_to(o.rhs());
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength; higher binds tighter.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    default: return 6;  // leaves never need parentheses
  }
}

// `wrap_equal` forces parentheses when this node's precedence merely ties the
// parent's: set for the operand on the non-associating side, so the printed
// text re-parses to the identical tree.
void print(const Formula& f, std::ostringstream& out, int parent_prec,
           bool wrap_equal) {
  const int prec = precedence(f.kind());
  const bool parens =
      prec < parent_prec || (prec == parent_prec && wrap_equal);
  if (parens) out << "(";
  switch (f.kind()) {
    case FormulaKind::Top: out << "top"; break;
    case FormulaKind::Bot: out << "bot"; break;
    case FormulaKind::Atom: out << f.atom_name(); break;
    case FormulaKind::Not:
      out << "!";
      print(f.lhs(), out, prec, false);
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      // The parser nests & and | to the left.
      const char* op = f.kind() == FormulaKind::And ? " & " : " | ";
      print(f.lhs(), out, prec, false);
      out << op;
      print(f.rhs(), out, prec, true);
      break;
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      // The arrows are right-associative.
      const char* op = f.kind() == FormulaKind::Implies ? " -> " : " <-> ";
      print(f.lhs(), out, prec, true);
      out << op;
      print(f.rhs(), out, prec, false);
      break;
    }
  }
  if (parens) out << ")";
}

}  // namespace

std::string Formula::to_string() const {
  std::ostringstream out;
  print(*this, out, 0, false);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok : std::uint8_t {
  Atom, Top, Bot, Not, And, Or, Implies, Iff, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) return {Tok::End, "", at};
    const char c = src_[pos_];
    // Single-byte operators.
    switch (c) {
      case '(': ++pos_; return {Tok::LParen, "(", at};
      case ')': ++pos_; return {Tok::RParen, ")", at};
      case '!': ++pos_; return {Tok::Not, "!", at};
      case '&': ++pos_; return {Tok::And, "&", at};
      case '|': ++pos_; return {Tok::Or, "|", at};
      case '-':
        if (peek(1) == '>') { pos_ += 2; return {Tok::Implies, "->", at}; }
        throw ParseError("stray '-'", at);
      case '<':
        if (peek(1) == '-' && peek(2) == '>') {
          pos_ += 3;
          return {Tok::Iff, "<->", at};
        }
        throw ParseError("stray '<'", at);
      default: break;
    }
    // Unicode aliases, matched on their UTF-8 byte sequences.
    static const struct { const char* utf8; Tok tok; } kAliases[] = {
        {"¬", Tok::Not},     // ¬
        {"∧", Tok::And},     // ∧
        {"∨", Tok::Or},      // ∨
        {"→", Tok::Implies}, // →
        {"↔", Tok::Iff},     // ↔
        {"⊤", Tok::Top},     // ⊤
        {"⊥", Tok::Bot},     // ⊥
    };
    for (const auto& alias : kAliases) {
      const std::string_view u(alias.utf8);
      if (src_.substr(pos_, u.size()) == u) {
        pos_ += u.size();
        return {alias.tok, std::string(u), at};
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) ||
              src_[end] == '_'))
        ++end;
      std::string word(src_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "top") return {Tok::Top, word, at};
      if (word == "bot") return {Tok::Bot, word, at};
      return {Tok::Atom, word, at};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Recursive descent over: iff := imp ('<->' iff)?; imp := or ('->' imp)?;
// or := and ('|' and)*; and := unary ('&' unary)*; unary := '!' unary | prim.
class Parser {
 public:
  Parser(std::string_view src, const Alphabet& alphabet)
      : lexer_(src), alphabet_(alphabet) {
    advance();
  }

  Formula parse() {
    Formula f = parse_iff();
    if (cur_.kind != Tok::End)
      throw ParseError("unexpected '" + cur_.text + "'", cur_.offset);
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool accept(Tok kind) {
    if (cur_.kind != kind) return false;
    advance();
    return true;
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (accept(Tok::Iff)) return Formula::iff(lhs, parse_iff());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(Tok::Implies)) return Formula::implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = f | parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = f & parse_unary();
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return !parse_unary();
    return parse_primary();
  }

  Formula parse_primary() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Top: advance(); return Formula::top();
      case Tok::Bot: advance(); return Formula::bot();
      case Tok::Atom: {
        advance();
        if (!alphabet_.index_of(t.text))
          throw Error("unknown atom '" + t.text + "'");
        return Formula::atom(alphabet_, t.text);
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        if (!accept(Tok::RParen))
          throw ParseError("expected ')'", cur_.offset);
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of formula", t.offset);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.offset);
    }
  }

  Lexer lexer_;
  const Alphabet& alphabet_;
  Token cur_{Tok::End, "", 0};
};

}  // namespace

Formula parse_formula(std::string_view text, const Alphabet& alphabet) {
  return Parser(text, alphabet).parse();
}

// ---------------------------------------------------------------------------
// Semantics

WorldSet models(const Formula& f, const Alphabet& alphabet) {
  const std::uint32_t count = alphabet.world_count();
  switch (f.kind()) {
    case FormulaKind::Top: return WorldSet::full(count);
    case FormulaKind::Bot: return WorldSet(count);
    case FormulaKind::Atom: {
      if (f.atom_index() >= alphabet.size() ||
          alphabet.atom_name(f.atom_index()) != f.atom_name())
        throw Error("atom '" + f.atom_name() +
                    "' does not belong to this alphabet");
      WorldSet ws(count);
      for (World w = 0; w < count; ++w)
        if (alphabet.atom_true_in(w, f.atom_index())) ws.insert(w);
      return ws;
    }
    case FormulaKind::Not: return models(f.lhs(), alphabet).complement();
    case FormulaKind::And:
      return models(f.lhs(), alphabet) & models(f.rhs(), alphabet);
    case FormulaKind::Or:
      return models(f.lhs(), alphabet) | models(f.rhs(), alphabet);
    case FormulaKind::Implies:
      return models(f.lhs(), alphabet).complement() |
             models(f.rhs(), alphabet);
    case FormulaKind::Iff: {
      const WorldSet a = models(f.lhs(), alphabet);
      const WorldSet b = models(f.rhs(), alphabet);
      return (a & b) | (a.complement() & b.complement());
    }
  }
  throw Error("corrupt formula node");
}

Formula form_of(const WorldSet& ws, const Alphabet& alphabet) {
  if (ws.universe_size() != alphabet.world_count())
    throw Error("world set does not match the alphabet's universe");
  if (ws.empty()) return Formula::bot();
  bool have_disjunction = false;
  Formula result = Formula::bot();
  ws.for_each([&](World w) {
    Formula conj = Formula::atom(alphabet, alphabet.atom_name(0));
    if (!alphabet.atom_true_in(w, 0)) conj = !conj;
    for (std::uint32_t i = 1; i < alphabet.size(); ++i) {
      Formula lit = Formula::atom(alphabet, alphabet.atom_name(i));
      if (!alphabet.atom_true_in(w, i)) lit = !lit;
      conj = conj & lit;
    }
    result = have_disjunction ? (result | conj) : conj;
    have_disjunction = true;
  });
  return result;
}

bool semantic_query(QueryKind kind, const Formula& a, const Formula* b,
                    const Alphabet& alphabet) {
  const bool needs_two =
      kind == QueryKind::Entails || kind == QueryKind::Equivalent;
  if (needs_two && b == nullptr)
    throw UsageError("query needs two formulas");
  if (!needs_two && b != nullptr)
    throw UsageError("query takes a single formula");
  switch (kind) {
    case QueryKind::Entails:
      return models(a, alphabet).subset_of(models(*b, alphabet));
    case QueryKind::Equivalent:
      return models(a, alphabet) == models(*b, alphabet);
    case QueryKind::Consistent: return !models(a, alphabet).empty();
    case QueryKind::Complete: return models(a, alphabet).count() <= 1;
  }
  throw Error("corrupt query kind");
}

bool entails(const Formula& a, const Formula& b, const Alphabet& alphabet) {
  return semantic_query(QueryKind::Entails, a, &b, alphabet);
}
bool equivalent(const Formula& a, const Formula& b, const Alphabet& alphabet) {
  return semantic_query(QueryKind::Equivalent, a, &b, alphabet);
}
bool consistent(const Formula& a, const Alphabet& alphabet) {
  return semantic_query(QueryKind::Consistent, a, nullptr, alphabet);
}
bool complete(const Formula& a, const Alphabet& alphabet) {
  return semantic_query(QueryKind::Complete, a, nullptr, alphabet);
}

}  // namespace ibu
