#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "irta/automaton.hpp"

namespace irta {

// Graphviz export; edges carry the transition label "a, guard, r" where r is
// the clock factor (0 resets).
inline std::string to_dot(const OneClockTA& a, const std::string& graph_name = "automaton") {
  std::string out = "digraph \"" + graph_name + "\" {\n  rankdir=LR;\n";
  out += "  // alphabet:";
  for (const auto& s : a.alphabet) out += " " + s;
  out += "\n  __init [shape=point, label=\"\"];\n";
  for (const auto& st : a.states) {
    out += "  s" + std::to_string(st.id) + " [label=\"" + st.name + "\", shape=" +
           (st.accepting ? "doublecircle" : "circle") + "];\n";
  }
  out += "  __init -> s" + std::to_string(a.initial) + ";\n";
  for (const auto& t : a.transitions) {
    out += "  s" + std::to_string(t.from) + " -> s" + std::to_string(t.to) +
           " [label=\"" + t.symbol + ", " + t.guard.str() + ", " +
           std::to_string(t.reset) + "\"];\n";
  }
  out += "}\n";
  return out;
}

// Guard in label syntax: "x=1", "0<x<1", "1<x", or atoms joined by " & ".
inline Guard parse_guard_text(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> int {
    if (s.empty()) throw ParseError("malformed guard: '" + std::string(text) + "'");
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9')
        throw ParseError("malformed guard: '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  };
  auto parse_atom = [&](std::string_view s) -> GuardAtom {
    if (s.rfind("x<", 0) == 0) return {GuardAtom::Op::Less, parse_int(s.substr(2))};
    if (s.rfind("x=", 0) == 0) return {GuardAtom::Op::Equal, parse_int(s.substr(2))};
    const auto lt = s.find("<x");
    if (lt != std::string_view::npos && lt + 2 == s.size())
      return {GuardAtom::Op::Greater, parse_int(s.substr(0, lt))};
    throw ParseError("malformed guard atom: '" + std::string(s) + "'");
  };

  if (text == "true") return Guard::conj({});
  if (text.find(" & ") != std::string_view::npos) {
    std::vector<GuardAtom> atoms;
    std::string_view rest = text;
    for (;;) {
      const auto amp = rest.find(" & ");
      atoms.push_back(parse_atom(rest.substr(0, amp)));
      if (amp == std::string_view::npos) break;
      rest = rest.substr(amp + 3);
    }
    return Guard::conj(std::move(atoms));
  }
  // m<x<m+1 has two comparisons, m<x and x=m one each
  const auto first = text.find('<');
  if (first != std::string_view::npos &&
      text.find('<', first + 1) != std::string_view::npos) {
    const int lo = parse_int(text.substr(0, first));
    return Guard::open(lo);
  }
  const GuardAtom atom = parse_atom(text);
  switch (atom.op) {
    case GuardAtom::Op::Equal: return Guard::eq(atom.m);
    case GuardAtom::Op::Greater: return Guard::above(atom.m);
    default: return Guard::conj({atom});
  }
}

// Reads the subset of DOT that to_dot produces, so the format round-trips.
inline OneClockTA from_dot(std::string_view text) {
  OneClockTA a;
  std::map<std::string, int> ids;
  std::set<std::string> symbols;

  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.remove_suffix(1);
    return s;
  };
  auto attr = [&](std::string_view line, std::string_view key,
                  bool quoted) -> std::optional<std::string> {
    const std::string needle = std::string(key) + "=";
    const auto pos = line.find(needle);
    if (pos == std::string_view::npos) return std::nullopt;
    std::string_view rest = line.substr(pos + needle.size());
    if (quoted) {
      if (rest.empty() || rest.front() != '"') return std::nullopt;
      rest.remove_prefix(1);
      const auto end = rest.find('"');
      if (end == std::string_view::npos)
        throw ParseError("unterminated attribute in DOT line");
      return std::string(rest.substr(0, end));
    }
    const auto end = rest.find_first_of(",]");
    return std::string(trim(rest.substr(0, end)));
  };

  struct Edge {
    std::string from, to, label;
  };
  std::vector<Edge> edges;
  std::string initial_node;
  std::vector<std::string> declared_alphabet;

  std::size_t begin = 0;
  while (begin < text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(begin, end - begin));
    begin = end + 1;
    if (line.rfind("// alphabet:", 0) == 0) {
      std::string_view rest = trim(line.substr(12));
      while (!rest.empty()) {
        const auto space = rest.find(' ');
        declared_alphabet.emplace_back(rest.substr(0, space));
        if (space == std::string_view::npos) break;
        rest = trim(rest.substr(space + 1));
      }
      continue;
    }
    if (line.empty() || line.rfind("digraph", 0) == 0 || line == "}" ||
        line.rfind("rankdir", 0) == 0 || line.rfind("//", 0) == 0)
      continue;
    const auto arrow = line.find("->");
    if (arrow != std::string_view::npos) {
      const std::string from{trim(line.substr(0, arrow))};
      std::string_view rest = trim(line.substr(arrow + 2));
      const auto bracket = rest.find('[');
      const std::string to{trim(rest.substr(0, bracket == std::string_view::npos
                                                    ? rest.find(';')
                                                    : bracket))};
      if (from == "__init") {
        initial_node = to;
        continue;
      }
      const auto label = attr(line, "label", true);
      if (!label) throw ParseError("DOT edge without label: " + std::string(line));
      edges.push_back({from, to, *label});
      continue;
    }
    // node line
    const auto bracket = line.find('[');
    if (bracket == std::string_view::npos)
      throw ParseError("unrecognized DOT line: " + std::string(line));
    const std::string node{trim(line.substr(0, bracket))};
    if (node == "__init") continue;
    const auto label = attr(line, "label", true);
    const auto shape = attr(line, "shape", false);
    if (!label || !shape)
      throw ParseError("DOT node without label or shape: " + std::string(line));
    ids[node] = a.add_state(*label, *shape == "doublecircle");
  }

  if (initial_node.empty() || !ids.count(initial_node))
    throw ParseError("DOT graph without an initial marker");
  a.initial = ids.at(initial_node);

  for (const auto& e : edges) {
    if (!ids.count(e.from) || !ids.count(e.to))
      throw ParseError("DOT edge references unknown node");
    // label is "symbol, guard, r"
    const auto c1 = e.label.find(", ");
    const auto c2 = e.label.rfind(", ");
    if (c1 == std::string::npos || c2 == c1)
      throw ParseError("malformed DOT edge label: " + e.label);
    const std::string symbol = e.label.substr(0, c1);
    const std::string guard_text = e.label.substr(c1 + 2, c2 - c1 - 2);
    const std::string reset_text = e.label.substr(c2 + 2);
    if (reset_text != "0" && reset_text != "1")
      throw ParseError("malformed clock factor in DOT edge label: " + e.label);
    symbols.insert(symbol);
    a.add_transition(ids.at(e.from), ids.at(e.to), symbol,
                     parse_guard_text(guard_text), reset_text == "1" ? 1 : 0);
  }
  if (!declared_alphabet.empty())
    a.alphabet = declared_alphabet;
  else
    a.alphabet.assign(symbols.begin(), symbols.end());
  check_structure(a);
  return a;
}

}  // namespace irta
