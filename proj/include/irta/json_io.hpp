#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "irta/acceptor.hpp"
#include "irta/automaton.hpp"
#include "irta/learner.hpp"

namespace irta {

using ordered_json = nlohmann::ordered_json;

inline ordered_json guard_to_json(const Guard& g) {
  ordered_json j;
  switch (g.kind) {
    case Guard::Kind::Eq:
      j["kind"] = "eq";
      j["m"] = g.m;
      break;
    case Guard::Kind::Open:
      j["kind"] = "open";
      j["m"] = g.m;
      break;
    case Guard::Kind::Above:
      j["kind"] = "aboveK";
      j["m"] = g.m;
      break;
    case Guard::Kind::Conj: {
      j["kind"] = "conj";
      ordered_json atoms = ordered_json::array();
      for (const auto& a : g.atoms) {
        ordered_json atom;
        switch (a.op) {
          case GuardAtom::Op::Less: atom["op"] = "<"; break;
          case GuardAtom::Op::Greater: atom["op"] = ">"; break;
          case GuardAtom::Op::Equal: atom["op"] = "="; break;
        }
        atom["m"] = a.m;
        atoms.push_back(atom);
      }
      j["atoms"] = atoms;
      break;
    }
  }
  return j;
}

inline Guard guard_from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "eq") return Guard::eq(j.at("m").get<int>());
  if (kind == "open") return Guard::open(j.at("m").get<int>());
  if (kind == "aboveK") return Guard::above(j.at("m").get<int>());
  if (kind == "conj") {
    std::vector<GuardAtom> atoms;
    for (const auto& atom : j.at("atoms")) {
      const std::string op = atom.at("op").get<std::string>();
      GuardAtom a;
      a.m = atom.at("m").get<int>();
      if (op == "<") a.op = GuardAtom::Op::Less;
      else if (op == ">") a.op = GuardAtom::Op::Greater;
      else if (op == "=") a.op = GuardAtom::Op::Equal;
      else throw ParseError("unknown guard atom op: " + op);
      atoms.push_back(a);
    }
    return Guard::conj(std::move(atoms));
  }
  throw ParseError("unknown guard kind: " + kind);
}

// Schema: {alphabet, states:[{id,name,accepting}], initial,
//          transitions:[{from,to,symbol,guard,reset}], k?}
// reset uses the clock-factor convention: 0 resets, 1 keeps.
inline ordered_json automaton_to_json(const OneClockTA& a,
                                      std::optional<int> k = std::nullopt) {
  ordered_json j;
  j["alphabet"] = a.alphabet;
  ordered_json states = ordered_json::array();
  for (const auto& st : a.states) {
    ordered_json s;
    s["id"] = st.id;
    s["name"] = st.name;
    s["accepting"] = st.accepting;
    states.push_back(s);
  }
  j["states"] = states;
  j["initial"] = a.initial;
  std::vector<Transition> sorted = a.transitions;
  std::sort(sorted.begin(), sorted.end(), [](const Transition& x, const Transition& y) {
    return std::tie(x.from, x.symbol, x.guard, x.to, x.reset) <
           std::tie(y.from, y.symbol, y.guard, y.to, y.reset);
  });
  ordered_json transitions = ordered_json::array();
  for (const auto& t : sorted) {
    ordered_json tj;
    tj["from"] = t.from;
    tj["to"] = t.to;
    tj["symbol"] = t.symbol;
    tj["guard"] = guard_to_json(t.guard);
    tj["reset"] = t.reset;
    transitions.push_back(tj);
  }
  j["transitions"] = transitions;
  if (k) j["k"] = *k;
  return j;
}

inline ordered_json acceptor_to_json(const KAcceptor& b) {
  return automaton_to_json(b.ta, b.k);
}

// Accepts arbitrary (unique) state ids and renumbers them densely,
// preserving names.
inline OneClockTA automaton_from_json(const ordered_json& j,
                                      std::optional<int>* k_out = nullptr) {
  OneClockTA a;
  for (const auto& s : j.at("alphabet")) a.alphabet.push_back(s.get<std::string>());
  std::map<std::int64_t, int> remap;
  for (const auto& s : j.at("states")) {
    const std::int64_t id = s.at("id").get<std::int64_t>();
    const std::string name =
        s.contains("name") ? s.at("name").get<std::string>() : std::to_string(id);
    const bool accepting = s.value("accepting", false);
    if (remap.count(id)) throw ParseError("duplicate state id in automaton JSON");
    remap[id] = a.add_state(name, accepting);
  }
  const std::int64_t init = j.at("initial").get<std::int64_t>();
  if (!remap.count(init)) throw ParseError("initial state id not declared");
  a.initial = remap[init];
  for (const auto& t : j.at("transitions")) {
    const std::int64_t from = t.at("from").get<std::int64_t>();
    const std::int64_t to = t.at("to").get<std::int64_t>();
    if (!remap.count(from) || !remap.count(to))
      throw ParseError("transition references undeclared state id");
    a.add_transition(remap[from], remap[to], t.at("symbol").get<std::string>(),
                     guard_from_json(t.at("guard")), t.at("reset").get<int>());
  }
  if (k_out) {
    if (j.contains("k")) *k_out = j.at("k").get<int>();
    else *k_out = std::nullopt;
  }
  check_structure(a);
  return a;
}

inline ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

inline ordered_json table_to_json(const ObservationTable& t) {
  ordered_json j;
  auto words = [](const std::vector<TimedWord>& ws) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : ws) arr.push_back(word_text(w));
    return arr;
  };
  j["u1"] = words(t.u1());
  j["u2"] = words(t.u2());
  j["e"] = words(t.columns());
  ordered_json entries = ordered_json::object();
  ordered_json cvals = ordered_json::object();
  auto add_rows = [&](const std::vector<TimedWord>& ws) {
    for (const auto& w : ws) {
      ordered_json row = ordered_json::array();
      for (const auto& e : t.columns()) row.push_back(t.entry(w, e) ? 1 : 0);
      entries[word_text(w)] = row;
      cvals[word_text(w)] = t.cval(w).str();
    }
  };
  add_rows(t.u1());
  add_rows(t.u2());
  j["entries"] = entries;
  j["cvals"] = cvals;
  return j;
}

}  // namespace irta
