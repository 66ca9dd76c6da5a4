// frobcoord: grammaticality checks, sentence evaluation and self-tests.
#include <cstdlib>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frobcoord/errors.hpp"
#include "frobcoord/format.hpp"
#include "frobcoord/lexicon.hpp"
#include "frobcoord/pregroup.hpp"
#include "frobcoord/selftest.hpp"
#include "frobcoord/sentence.hpp"

namespace fc = frobcoord;

namespace {

enum Exit { kOk = 0, kSemantic = 1, kEnvironment = 2 };

struct SentenceArgs {
  std::string lexicon;
  std::vector<std::string> words;
  std::string target = "s";
};

void add_sentence_args(CLI::App* cmd, SentenceArgs& args) {
  cmd->add_option("lexicon", args.lexicon, "Lexicon file")->required();
  cmd->add_option("words", args.words, "Sentence words")->required();
  cmd->add_option("-t,--target", args.target, "Target type")->capture_default_str();
}

template <fc::Semiring S>
std::optional<fc::Reading<S>> read_sentence(const SentenceArgs& args, const fc::Lexicon<S>& lex) {
  const auto symbols = lex.spaces().symbols();
  return fc::read_words<S>(args.words, lex, fc::parse_type(args.target, &symbols));
}

int ungrammatical(const SentenceArgs& args) {
  std::cout << "ungrammatical: no reduction to " << args.target << "\n";
  return kSemantic;
}

struct CheckOptions {
  bool all = false;
  bool diagram = false;
};

template <fc::Semiring S>
int run_check(const SentenceArgs& args, const CheckOptions& opts, const fc::Lexicon<S>& lex) {
  const auto reading = read_sentence(args, lex);
  if (!reading) return ungrammatical(args);
  std::vector<fc::Derivation> derivations{reading->derivation};
  if (opts.all) {
    const auto symbols = lex.spaces().symbols();
    derivations = fc::enumerate_reductions(reading->derivation.token_types,
                                           fc::parse_type(args.target, &symbols), 1 << 16);
  }
  std::cout << "grammatical\n";
  for (const auto& d : derivations) {
    std::cout << fc::format_links(d) << "\n";
    if (opts.diagram) std::cout << fc::ascii_diagram(d, args.words) << "\n";
  }
  return kOk;
}

template <fc::Semiring S>
int run_derive(const SentenceArgs& args, const fc::Lexicon<S>& lex) {
  const auto reading = read_sentence(args, lex);
  if (!reading) return ungrammatical(args);
  const auto& d = reading->derivation;
  for (std::size_t k = 0; k < args.words.size(); ++k) {
    std::cout << k << " " << args.words[k] << " : " << fc::format_type(d.token_types[k]) << "\n";
  }
  std::cout << "links: " << fc::format_links(d) << "\n";
  std::cout << "residual: " << fc::format_type(d.residual_type()) << "\n";
  std::cout << fc::ascii_diagram(d, args.words) << "\n";
  return kOk;
}

struct EvalOptions {
  std::string mode = "explicit";
  std::string format = "plain";
  bool compare = false;
};

template <fc::Semiring S>
nlohmann::json to_json(const fc::Tensor<S>& t) {
  nlohmann::json wires = nlohmann::json::array();
  nlohmann::json shape = nlohmann::json::array();
  for (const auto& w : t.wires()) {
    wires.push_back(fc::to_string(w));
    shape.push_back(w.dim);
  }
  nlohmann::json data = nlohmann::json::array();
  for (auto v : t.data()) data.push_back(static_cast<double>(v));
  return {{"semiring", std::string(S::name)}, {"wires", wires}, {"shape", shape}, {"data", data}};
}

template <fc::Semiring S>
int run_eval(const SentenceArgs& args, const EvalOptions& opts, const fc::Lexicon<S>& lex) {
  const auto reading = read_sentence(args, lex);
  if (!reading) return ungrammatical(args);
  const auto mode =
      opts.mode == "closed-form" ? fc::EvalMode::closed_form : fc::EvalMode::explicit_network;
  const auto result = fc::evaluate_reading(*reading, lex.spaces(), mode);
  std::optional<double> difference;
  if (opts.compare) {
    const auto other = fc::evaluate_reading(
        *reading, lex.spaces(),
        mode == fc::EvalMode::closed_form ? fc::EvalMode::explicit_network : fc::EvalMode::closed_form);
    difference = fc::max_abs_difference(result, other);
  }
  if (opts.format == "json") {
    auto j = to_json(result);
    if (difference) j["max_abs_difference"] = *difference;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << fc::format_plain(result) << "\n";
    if (difference) std::cout << "max abs difference: " << *difference << "\n";
  }
  return kOk;
}

struct SelftestArgs {
  std::size_t max_dim = 4;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  bool inject_fault = false;
};

int run_selftest(const SelftestArgs& args) {
  fc::selftest::Options opts;
  opts.max_dim = args.max_dim;
  opts.trials = args.trials;
  opts.inject_fault = args.inject_fault;
  if (args.seed) {
    opts.seed = *args.seed;
  } else if (const char* env = std::getenv("FROBCOORD_SEED")) {
    try {
      opts.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: FROBCOORD_SEED must be an unsigned integer\n";
      return kEnvironment;
    }
  }
  std::cout << "seed " << opts.seed << ", dims <= " << opts.max_dim << ", " << opts.trials
            << " trials\n";
  bool ok = true;
  for (const auto& r : fc::selftest::run_all(opts)) {
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " " << r.passed << "/" << r.total
              << "\n";
    if (!r.ok()) {
      ok = false;
      std::cout << "  counterexample: " << r.counterexample.value_or("(none recorded)") << "\n";
    }
  }
  return ok ? kOk : kSemantic;
}

template <typename F>
int with_lexicon(const std::string& path, F&& f) {
  const auto lex = fc::load_lexicon(path);
  return std::visit(f, lex);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pregroup grammaticality and Frobenius coordination semantics"};
  app.require_subcommand(1);

  SentenceArgs check_args, eval_args, derive_args;
  CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Report whether a sentence reduces to the target");
  add_sentence_args(check, check_args);
  check->add_flag("--all", check_opts.all, "Print every derivation");
  check->add_flag("--ascii-diagram", check_opts.diagram, "Draw links under the words");

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate the meaning of a sentence");
  add_sentence_args(eval, eval_args);
  eval->add_option("--mode", eval_opts.mode, "Evaluation mode")
      ->check(CLI::IsMember({"explicit", "closed-form"}))
      ->capture_default_str();
  eval->add_option("--format", eval_opts.format, "Output format")
      ->check(CLI::IsMember({"plain", "json"}))
      ->capture_default_str();
  eval->add_flag("--compare", eval_opts.compare, "Also run the other mode and report the difference");

  auto* derive = app.add_subcommand("derive", "Show the canonical derivation");
  add_sentence_args(derive, derive_args);

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "Run the property and oracle suites");
  selftest->add_option("--max-dim", st.max_dim, "Largest space dimension")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  selftest->add_option("--trials", st.trials, "Trials per law")->capture_default_str();
  selftest->add_option("--seed", st.seed, "Seed (default: FROBCOORD_SEED or built in)");
  selftest->add_flag("--inject-fault", st.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kEnvironment;
  }

  try {
    if (*check) {
      return with_lexicon(check_args.lexicon,
                          [&](const auto& lex) { return run_check(check_args, check_opts, lex); });
    }
    if (*eval) {
      return with_lexicon(eval_args.lexicon,
                          [&](const auto& lex) { return run_eval(eval_args, eval_opts, lex); });
    }
    if (*derive) {
      return with_lexicon(derive_args.lexicon,
                          [&](const auto& lex) { return run_derive(derive_args, lex); });
    }
    return run_selftest(st);
  } catch (const fc::UngrammaticalSentence& e) {
    std::cout << "ungrammatical: " << e.what() << "\n";
    return kSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnvironment;
  }
}
