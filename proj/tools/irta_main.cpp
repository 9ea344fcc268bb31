// Command-line front end: validation, strict-form conversion, acceptor
// construction, minimization, active learning, membership, equivalence,
// rescaling and DOT export for one-clock integer-reset timed automata.
//
// Exit codes: 0 success / property holds, 1 property fails (member, equiv),
// 2 usage or format error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "irta/acceptor.hpp"
#include "irta/canonical.hpp"
#include "irta/dot.hpp"
#include "irta/json_io.hpp"
#include "irta/learner.hpp"
#include "irta/rescale.hpp"
#include "irta/strictify.hpp"

namespace {

bool verbose() {
  const char* env = std::getenv("IRTA_LOG");
  return env && *env && std::string(env) != "0" && std::string(env) != "quiet";
}

irta::OneClockTA load_automaton(const std::string& path,
                                std::optional<int>* k_out = nullptr) {
  return irta::automaton_from_json(irta::load_json_file(path), k_out);
}

// Chooses the constant: explicit flag, then the JSON "k" field, then the
// largest guard constant.
int choose_k(std::optional<int> flag, std::optional<int> file_k,
             const irta::OneClockTA& a) {
  if (flag) return *flag;
  if (file_k) return *file_k;
  return irta::max_constant(a);
}

irta::KAcceptor load_acceptor(const std::string& path, std::optional<int> flag_k) {
  std::optional<int> file_k;
  const irta::OneClockTA a = load_automaton(path, &file_k);
  const int k = choose_k(flag_k, file_k, a);
  try {
    return irta::as_k_acceptor(a, k);
  } catch (const std::invalid_argument&) {
    if (verbose())
      std::cerr << "note: " << path
                << " is not in acceptor form, running the conversion pipeline\n";
    return irta::build_acceptor(a, k);
  }
}

void emit(const irta::ordered_json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-")
    std::cout << j.dump(2) << "\n";
  else
    irta::save_json_file(out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-clock integer-reset timed automata toolkit"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path, word_text_arg, target_path, log_path;
  std::optional<int> k_flag;

  auto* validate_cmd = app.add_subcommand("validate", "print automaton flags");
  validate_cmd->add_option("input", in_path)->required();

  auto* strictify_cmd =
      app.add_subcommand("strictify", "convert to strict form");
  strictify_cmd->add_option("input", in_path)->required();
  strictify_cmd->add_option("-o,--output", out_path);

  auto* acceptor_cmd = app.add_subcommand(
      "acceptor", "normalize, strictify, complete and annotate regions");
  acceptor_cmd->add_option("input", in_path)->required();
  acceptor_cmd->add_option("-k,--k", k_flag);
  acceptor_cmd->add_option("-o,--output", out_path);

  auto* minimize_cmd = app.add_subcommand("minimize", "canonical minimal acceptor");
  minimize_cmd->add_option("input", in_path)->required();
  minimize_cmd->add_option("-k,--k", k_flag);
  minimize_cmd->add_option("-o,--output", out_path);

  auto* learn_cmd =
      app.add_subcommand("learn", "learn the canonical acceptor of a target");
  learn_cmd->add_option("-t,--target", target_path)->required();
  learn_cmd->add_option("-k,--k", k_flag);
  learn_cmd->add_option("-o,--output", out_path);
  learn_cmd->add_option("--log", log_path);

  auto* member_cmd = app.add_subcommand("member", "timed word membership");
  member_cmd->add_option("input", in_path)->required();
  member_cmd->add_option("word", word_text_arg);

  auto* equiv_cmd = app.add_subcommand("equiv", "language equivalence");
  equiv_cmd->add_option("first", in_path)->required();
  equiv_cmd->add_option("second", in_path2)->required();
  equiv_cmd->add_option("-k,--k", k_flag);

  std::string x_text, xp_text;
  auto* rescale_cmd = app.add_subcommand("rescale", "apply the residual rescaling");
  rescale_cmd->add_option("-x,--x", x_text)->required();
  rescale_cmd->add_option("--xp", xp_text)->required();
  rescale_cmd->add_option("-k,--k", k_flag)->required();
  rescale_cmd->add_option("word", word_text_arg);

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz export");
  dot_cmd->add_option("input", in_path)->required();
  dot_cmd->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*validate_cmd) {
      const auto a = load_automaton(in_path);
      const auto rep = irta::validate(a);
      std::cout << "deterministic: " << (rep.deterministic ? "true" : "false") << "\n"
                << "complete: " << (rep.complete ? "true" : "false") << "\n"
                << "irta: " << (rep.irta ? "true" : "false") << "\n"
                << "strict: " << (rep.strict ? "true" : "false") << "\n"
                << "max_constant: " << rep.max_constant << "\n";
      if (verbose())
        for (const auto& n : rep.notes) std::cerr << "note: " << n << "\n";
      return 0;
    }
    if (*strictify_cmd) {
      const auto a = load_automaton(in_path);
      emit(irta::automaton_to_json(irta::strictify(a)), out_path);
      return 0;
    }
    if (*acceptor_cmd) {
      std::optional<int> file_k;
      const auto a = load_automaton(in_path, &file_k);
      const auto acc = irta::build_acceptor(a, choose_k(k_flag, file_k, a));
      emit(irta::acceptor_to_json(acc), out_path);
      return 0;
    }
    if (*minimize_cmd) {
      const auto acc = irta::minimize(load_acceptor(in_path, k_flag));
      std::cerr << "states: " << acc.num_states() << "\n";
      emit(irta::acceptor_to_json(acc), out_path);
      return 0;
    }
    if (*learn_cmd) {
      std::optional<int> file_k;
      const auto target_ta = load_automaton(target_path, &file_k);
      const int k = choose_k(k_flag, file_k, target_ta);
      irta::SimulatedTeacher teacher(irta::build_acceptor(target_ta, k));
      const bool log = !log_path.empty();
      const auto result =
          irta::learn(teacher, target_ta.alphabet, k, irta::LearnLimits{}, log);
      if (log) {
        std::ofstream log_out(log_path);
        if (!log_out) throw irta::ParseError("cannot open log file: " + log_path);
        for (const auto& table : result.table_log)
          log_out << irta::table_to_json(table).dump() << "\n";
      }
      emit(irta::acceptor_to_json(result.acceptor), out_path);
      std::cout << "MQ=" << result.membership_queries
                << " EQ=" << result.equivalence_queries
                << " states=" << result.acceptor.num_states() << "\n";
      return 0;
    }
    if (*member_cmd) {
      const auto a = load_automaton(in_path);
      const auto w = irta::parse_word(word_text_arg);
      return irta::member(a, w) ? 0 : 1;
    }
    if (*equiv_cmd) {
      std::optional<int> k1, k2;
      const auto a1 = load_automaton(in_path, &k1);
      const auto a2 = load_automaton(in_path2, &k2);
      int k = std::max(choose_k(k_flag, k1, a1), choose_k(k_flag, k2, a2));
      const auto b1 = irta::build_acceptor(a1, k);
      const auto b2 = irta::build_acceptor(a2, k);
      if (const auto cex = irta::equivalent(b1, b2)) {
        std::cout << (cex->empty() ? "" : irta::word_text(*cex)) << "\n";
        return 1;
      }
      std::cout << "equivalent\n";
      return 0;
    }
    if (*rescale_cmd) {
      const irta::RescaleContext ctx(irta::Rational::parse(x_text),
                                     irta::Rational::parse(xp_text), *k_flag);
      const auto w = irta::parse_word(word_text_arg);
      std::cout << irta::word_text(irta::rescale_word(ctx, w)) << "\n";
      return 0;
    }
    if (*dot_cmd) {
      const auto a = load_automaton(in_path);
      const std::string dot = irta::to_dot(a);
      if (out_path.empty() || out_path == "-") {
        std::cout << dot;
      } else {
        std::ofstream out(out_path);
        if (!out) throw irta::ParseError("cannot open file for writing: " + out_path);
        out << dot;
      }
      return 0;
    }
  } catch (const irta::LearnLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
