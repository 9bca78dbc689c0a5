#include "ibu/scenario_text.hpp"

#include <cctype>
#include <sstream>

namespace ibu {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer. Comments run from '#' to end of line. Sentences (formulas or
// world-set literals) are re-scanned by their own parsers, so the tokenizer
// only needs identifiers, integers and punctuation.

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < src.size()) {
      const char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_space();
    return pos >= src.size();
  }

  char peek() {
    skip_space();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(std::string_view literal) {
    skip_space();
    if (src.substr(pos, literal.size()) != literal) return false;
    // Words must not run into a longer identifier.
    if (!literal.empty() &&
        (std::isalnum(static_cast<unsigned char>(literal.back())) ||
         literal.back() == '_')) {
      const std::size_t after = pos + literal.size();
      if (after < src.size() &&
          (std::isalnum(static_cast<unsigned char>(src[after])) ||
           src[after] == '_'))
        return false;
    }
    pos += literal.size();
    return true;
  }

  void expect(std::string_view literal) {
    if (!accept(literal))
      throw ParseError("expected '" + std::string(literal) + "'", pos);
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos;
    if (pos >= src.size() ||
        (!std::isalpha(static_cast<unsigned char>(src[pos])) &&
         src[pos] != '_'))
      throw ParseError("expected an identifier", pos);
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '_'))
      ++pos;
    return std::string(src.substr(start, pos - start));
  }

  std::uint32_t integer() {
    skip_space();
    const std::size_t start = pos;
    while (pos < src.size() &&
           std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (pos == start) throw ParseError("expected a number", pos);
    return static_cast<std::uint32_t>(
        std::stoul(std::string(src.substr(start, pos - start))));
  }

  // The raw remainder of the current line, for line-scoped declarations.
  std::string rest_of_line() {
    const std::size_t start = pos;
    while (pos < src.size() && src[pos] != '\n' && src[pos] != '#') ++pos;
    return std::string(src.substr(start, pos - start));
  }

  // Scans a sentence up to (not including) one of the stop words or
  // punctuation, respecting nesting of () and {}. Stop matching only happens
  // at depth zero.
  std::string sentence_until(std::initializer_list<std::string_view> stops) {
    skip_space();
    const std::size_t start = pos;
    int depth = 0;
    while (pos < src.size()) {
      if (depth == 0) {
        bool stop = false;
        for (std::string_view s : stops) {
          if (src.substr(pos, s.size()) != s) continue;
          if (std::isalpha(static_cast<unsigned char>(s[0]))) {
            const std::size_t after = pos + s.size();
            const bool boundary_before =
                pos == 0 || !(std::isalnum(static_cast<unsigned char>(
                                  src[pos - 1])) ||
                              src[pos - 1] == '_');
            const bool boundary_after =
                after >= src.size() ||
                !(std::isalnum(static_cast<unsigned char>(src[after])) ||
                  src[after] == '_');
            if (boundary_before && boundary_after) stop = true;
          } else {
            stop = true;
          }
          if (stop) break;
        }
        if (stop) break;
      }
      const char c = src[pos];
      if (c == '(' || c == '{') ++depth;
      if (c == ')' || c == '}') --depth;
      if (depth < 0) break;
      ++pos;
    }
    std::string text(src.substr(start, pos - start));
    // Trim trailing whitespace.
    while (!text.empty() &&
           std::isspace(static_cast<unsigned char>(text.back())))
      text.pop_back();
    if (text.empty()) throw ParseError("expected a sentence", start);
    return text;
  }
};

// ---------------------------------------------------------------------------
// Order specifications

World parse_world(Cursor& c, const Universe& u) {
  const std::size_t at = c.pos;
  const std::string label = c.identifier();
  const auto w = u.find_world(label);
  if (!w) throw ParseError("unknown world '" + label + "'", at);
  return *w;
}

Preorder parse_order_spec(Cursor& c, const Universe& u) {
  const std::uint32_t n = u.world_count();
  if (c.accept("pairs")) {
    c.expect("{");
    std::vector<std::pair<World, World>> pairs;
    while (!c.accept("}")) {
      const World a = parse_world(c, u);
      c.expect("<=");
      const World b = parse_world(c, u);
      c.expect(";");
      pairs.emplace_back(a, b);
    }
    return Preorder::closure(n, WorldSet::full(n), pairs);
  }
  std::vector<std::vector<World>> layers;
  do {
    c.expect("[");
    std::vector<World> layer;
    layer.push_back(parse_world(c, u));
    while (c.accept(",")) layer.push_back(parse_world(c, u));
    c.expect("]");
    layers.push_back(std::move(layer));
  } while (c.accept("<"));
  return Preorder::from_layers(n, WorldSet::full(n), layers);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Cursor c{text};
  Scenario sc;
  bool have_universe = false;

  const auto need_universe = [&]() {
    if (!have_universe)
      throw ParseError("declare 'atoms:' or 'worlds: abstract <n>' first",
                       c.pos);
  };

  while (!c.done()) {
    if (c.accept("atoms")) {
      c.expect(":");
      // Line-scoped: every whitespace-separated word up to the line end.
      std::istringstream line(c.rest_of_line());
      std::vector<std::string> atoms;
      std::string word;
      while (line >> word) atoms.push_back(word);
      sc.universe = Universe::of_alphabet(Alphabet(std::move(atoms)));
      have_universe = true;
      continue;
    }
    if (c.accept("worlds")) {
      c.expect(":");
      c.expect("abstract");
      sc.universe = Universe::abstract_worlds(c.integer());
      have_universe = true;
      continue;
    }
    if (c.accept("state")) {
      need_universe();
      BeliefState s;
      s.id = c.identifier();
      if (sc.find_state(s.id))
        throw ParseError("duplicate state '" + s.id + "'", c.pos);
      s.belief = sc.universe.empty_set();
      c.expect("{");
      while (!c.accept("}")) {
        if (c.accept("belief")) {
          c.expect(":");
          const std::string sentence = c.sentence_until({";", "order", "}"});
          s.belief = sc.parse_sentence(sentence).denotation();
          c.accept(";");
        } else if (c.accept("order")) {
          const World w = parse_world(c, sc.universe);
          c.expect(":");
          Preorder order = parse_order_spec(c, sc.universe);
          if (!s.orders.emplace(w, std::move(order)).second)
            throw ParseError("duplicate order for world", c.pos);
          c.accept(";");
        } else {
          throw ParseError("expected 'belief:' or 'order'", c.pos);
        }
      }
      sc.states.push_back(std::move(s));
      continue;
    }
    if (c.accept("singleton")) {
      need_universe();
      const World w = parse_world(c, sc.universe);
      c.expect(":");
      Preorder order = parse_order_spec(c, sc.universe);
      if (!sc.singletons.emplace(w, std::move(order)).second)
        throw ParseError("duplicate singleton order", c.pos);
      c.accept(";");
      continue;
    }
    if (c.accept("script")) {
      need_universe();
      c.expect("{");
      while (!c.accept("}")) {
        ScriptEdge e;
        e.from = c.identifier();
        c.expect("--");
        const std::string sentence = c.sentence_until({"-->"});
        e.input = sc.parse_sentence(sentence);
        c.expect("-->");
        e.to = c.identifier();
        c.expect(";");
        sc.script.push_back(std::move(e));
      }
      continue;
    }
    if (c.accept("expect")) {
      need_universe();
      c.expect("{");
      while (!c.accept("}")) {
        ExpectClause e;
        if (c.accept("update")) {
          e.kind = ExpectClause::Kind::Update;
          e.state_id = c.identifier();
          c.expect("with");
          e.with = sc.parse_sentence(c.sentence_until({"using", "=="}));
        } else if (c.accept("iterate")) {
          e.kind = ExpectClause::Kind::Iterate;
          e.state_id = c.identifier();
          c.expect("with");
          e.with = sc.parse_sentence(c.sentence_until({"then"}));
          c.expect("then");
          e.then = sc.parse_sentence(c.sentence_until({"using", "=="}));
        } else if (c.accept("postulate")) {
          e.kind = ExpectClause::Kind::Postulate;
          e.postulate = c.identifier();
          c.expect("at");
          e.state_id = c.identifier();
          c.expect("with");
          e.with = sc.parse_sentence(c.sentence_until({"then"}));
          c.expect("then");
          e.then = sc.parse_sentence(c.sentence_until({"using", "=="}));
        } else {
          throw ParseError("expected 'update', 'iterate' or 'postulate'",
                           c.pos);
        }
        if (c.accept("using")) e.op = c.identifier();
        c.expect("==");
        if (e.kind == ExpectClause::Kind::Postulate) {
          if (c.accept("violated"))
            e.expect_violated = true;
          else if (c.accept("holds"))
            e.expect_violated = false;
          else
            throw ParseError("expected 'violated' or 'holds'", c.pos);
        } else {
          e.expected_set =
              sc.parse_sentence(c.sentence_until({";"})).denotation();
        }
        c.expect(";");
        sc.expects.push_back(std::move(e));
      }
      continue;
    }
    throw ParseError("unexpected input", c.pos);
  }

  if (!have_universe)
    throw ParseError("scenario declares no universe", 0);
  validate_scenario(sc);
  return sc;
}

std::string print_scenario(const Scenario& sc) {
  std::ostringstream out;
  const Universe& u = sc.universe;
  if (u.has_alphabet()) {
    out << "atoms:";
    for (const auto& a : u.alphabet().atoms()) out << " " << a;
    out << "\n";
  } else {
    out << "worlds: abstract " << u.world_count() << "\n";
  }
  for (const BeliefState& s : sc.states) {
    out << "\nstate " << s.id << " {\n";
    out << "  belief: " << u.set_label(s.belief) << ";\n";
    for (const auto& [w, order] : s.orders)
      out << "  order " << u.world_label(w) << ": " << order.describe(u)
          << ";\n";
    out << "}\n";
  }
  for (const auto& [w, order] : sc.singletons)
    out << "\nsingleton " << u.world_label(w) << ": " << order.describe(u)
        << ";\n";
  if (!sc.script.empty()) {
    out << "\nscript {\n";
    for (const auto& e : sc.script)
      out << "  " << e.from << " --" << e.input.text() << "--> " << e.to
          << ";\n";
    out << "}\n";
  }
  if (!sc.expects.empty()) {
    out << "\nexpect {\n";
    for (const auto& e : sc.expects) {
      out << "  ";
      switch (e.kind) {
        case ExpectClause::Kind::Update:
          out << "update " << e.state_id << " with " << e.with.text();
          break;
        case ExpectClause::Kind::Iterate:
          out << "iterate " << e.state_id << " with " << e.with.text()
              << " then " << e.then->text();
          break;
        case ExpectClause::Kind::Postulate:
          out << "postulate " << e.postulate << " at " << e.state_id
              << " with " << e.with.text() << " then " << e.then->text();
          break;
      }
      if (e.op) out << " using " << *e.op;
      out << " == ";
      if (e.kind == ExpectClause::Kind::Postulate)
        out << (e.expect_violated ? "violated" : "holds");
      else
        out << u.set_label(*e.expected_set);
      out << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace ibu
