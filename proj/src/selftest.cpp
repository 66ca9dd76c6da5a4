#include "frobcoord/selftest.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <set>
#include <utility>

#include "frobcoord/coordination.hpp"
#include "frobcoord/format.hpp"
#include "frobcoord/lexicon.hpp"
#include "frobcoord/network.hpp"
#include "frobcoord/sentence.hpp"
#include "frobcoord/tensor.hpp"

namespace frobcoord::selftest {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  // Runs one trial; `body` returns true on success and fills `dump` on failure.
  void trial(const std::function<bool(std::string&)>& body) {
    ++result_.total;
    std::string dump;
    bool ok = false;
    try {
      ok = body(dump);
    } catch (const std::exception& e) {
      dump += std::string(" exception: ") + e.what();
    }
    if (ok) {
      ++result_.passed;
    } else if (!result_.counterexample) {
      result_.counterexample = dump;
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::uint64_t trial_seed(const Options& opts, std::uint64_t suite, std::size_t trial) {
  SplitMix64 mix(opts.seed ^ (suite * 0x9e3779b97f4a7c15ULL));
  for (std::size_t k = 0; k < trial % 7; ++k) mix.next();
  return mix.next() + trial;
}

template <Semiring S>
Tensor<S> with_fault(Tensor<S> t, bool fault) {
  if (fault) {
    auto& v = t.mutable_data()[0];
    v = S::equal(v, S::zero()) ? S::one() : S::zero();
  }
  return t;
}

template <Semiring S>
std::string header(std::uint64_t seed, std::string_view what) {
  return "semiring=" + std::string(S::name) + " seed=" + std::to_string(seed) + " " +
         std::string(what);
}

// Frobenius maps on one space, each as an explicit tensor.
template <Semiring S>
struct FrobeniusMaps {
  explicit FrobeniusMaps(std::size_t dim, bool fault)
      : wire{"v", 0, dim},
        mu(with_fault(spider<S>({wire, wire, wire}), fault)),
        delta(spider<S>({wire, wire, wire})),
        unit(frobenius_zeta<S>(wire)),
        counit(Tensor<S>::filled({wire}, S::one())) {}

  Tensor<S> merge(const Tensor<S>& a, const Tensor<S>& b) const {
    return contract_between(b, contract_between(a, mu, {{0, 0}}), {{0, 0}});
  }
  Tensor<S> merge_matrix(const Tensor<S>& w) const {
    return contract_between(w, mu, {{0, 0}, {1, 1}});
  }
  Tensor<S> copy(const Tensor<S>& v) const { return contract_between(v, delta, {{0, 0}}); }

  Wire wire;
  Tensor<S> mu;     // (in, in, out)
  Tensor<S> delta;  // (in, out, out)
  Tensor<S> unit;
  Tensor<S> counit;
};

template <Semiring S>
void frobenius_for(const Options& opts, Recorder& rec) {
  const std::uint64_t suite = std::is_same_v<S, RealSemiring> ? 1 : 2;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts, suite, t);
    SplitMix64 rng(seed);
    const std::size_t d = rng.next_index(1, opts.max_dim);
    const FrobeniusMaps<S> f(d, opts.inject_fault);
    const auto a = random_tensor<S>({f.wire}, rng);
    const auto b = random_tensor<S>({f.wire}, rng);
    const auto c = random_tensor<S>({f.wire}, rng);
    const auto w = random_tensor<S>({f.wire, f.wire}, rng);
    const std::string inputs = " d=" + std::to_string(d) + " a=" + describe(a) +
                               " b=" + describe(b) + " c=" + describe(c) + " w=" + describe(w) +
                               " mu=" + describe(f.mu);

    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "associativity") + inputs;
      return approx_equal(f.merge(f.merge(a, b), c), f.merge(a, f.merge(b, c)));
    });
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "frobenius condition") + inputs;
      // (μ ⊗ 1)∘(1 ⊗ Δ): wires (m, d2) after reordering.
      const auto left = permute_wires(
          contract_between(contract_between(w, f.delta, {{1, 0}}), f.mu, {{0, 0}, {1, 1}}),
          {1, 0});
      const auto middle = f.copy(f.merge_matrix(w));
      // (1 ⊗ μ)∘(Δ ⊗ 1): wires (d1, m).
      const auto right =
          contract_between(contract_between(w, f.delta, {{0, 0}}), f.mu, {{2, 0}, {0, 1}});
      const auto closed = frobenius_delta(frobenius_mu_diagonal(w));
      return approx_equal(left, middle) && approx_equal(middle, right) &&
             approx_equal(middle, closed);
    });
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "specialness") + inputs;
      return approx_equal(f.merge_matrix(f.copy(a)), a);
    });
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "commutativity") + inputs;
      return approx_equal(f.merge(a, b), f.merge(b, a));
    });
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "unit") + inputs;
      return approx_equal(f.merge(f.unit, a), a) && approx_equal(f.merge(a, f.unit), a);
    });
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "counit") + inputs;
      return approx_equal(contract_between(f.copy(a), f.counit, {{0, 0}}), a) &&
             approx_equal(contract_between(f.copy(a), f.counit, {{1, 0}}), a);
    });
  }
}

template <Semiring S>
void snakes_for(const Options& opts, Recorder& rec) {
  const std::uint64_t suite = std::is_same_v<S, RealSemiring> ? 3 : 4;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts, suite, t);
    SplitMix64 rng(seed);
    const std::size_t d = rng.next_index(1, opts.max_dim);
    const auto v = random_tensor<S>({{"n", 0, d}}, rng);
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "snake") + " v=" + describe(v);
      const auto left =
          contract(tensor_product(v, eta_cap<S>("n", CapSide::right, d)), 0, 1, ContractCheck::typed);
      const auto right =
          contract(tensor_product(eta_cap<S>("n", CapSide::left, d), v), 1, 2, ContractCheck::typed);
      return approx_equal(left, v) && approx_equal(right, v);
    });
  }
}

template <Semiring S>
void coordinator_for(const Options& opts, Recorder& rec) {
  const std::uint64_t suite = std::is_same_v<S, RealSemiring> ? 5 : 6;
  const std::vector<PregroupType> conjuncts{parse_type("n"), parse_type("s"),
                                            parse_type("n.r s"), ditransitive_verb_type()};
  for (std::size_t ci = 0; ci < conjuncts.size(); ++ci) {
    const auto& x = conjuncts[ci];
    for (std::size_t t = 0; t < opts.trials; ++t) {
      const auto seed = trial_seed(opts, suite * 16 + ci, t);
      SplitMix64 rng(seed);
      SpaceAssignment spaces;
      spaces.set("n", rng.next_index(1, opts.max_dim));
      spaces.set("s", rng.next_index(1, opts.max_dim));
      const auto x1 = random_tensor<S>(spaces.wires(x), rng);
      const auto x2 = random_tensor<S>(spaces.wires(x), rng);
      rec.trial([&](std::string& dump) {
        dump = header<S>(seed, "coordinator x=" + format_type(x)) +
               " dims n=" + std::to_string(spaces.dim("n")) + " s=" + std::to_string(spaces.dim("s")) +
               " x1=" + describe(x1) + " x2=" + describe(x2);
        const auto d = reduce({x, coordinator_type(x), x}, x);
        if (!d) return false;
        const auto conj = with_fault(coordinator_tensor<S>(x, spaces), opts.inject_fault);
        const auto explicit_value = evaluate(build_network(*d, std::vector<Tensor<S>>{x1, conj, x2}, spaces));
        return approx_equal(explicit_value, coordinate_closed_form(x1, x2));
      });
    }
  }
}

template <Semiring S>
Lexicon<S> fixture_lexicon(const SpaceAssignment& spaces, std::uint64_t seed, bool fault) {
  const auto n = parse_type("n");
  const auto iv = parse_type("n.r s");
  const auto tv = parse_type("n.r s n.l");
  std::vector<GrammarEntry> grammar;
  for (const char* w : {"john", "mary", "musicals", "men", "women", "football", "bank", "loan",
                        "poe", "lovecraft", "apples", "oranges"}) {
    grammar.push_back({w, n, false});
  }
  for (const char* w : {"sleeps", "snores", "knit"}) grammar.push_back({w, iv, false});
  for (const char* w : {"likes", "watch"}) grammar.push_back({w, tv, false});
  for (const char* w : {"granted", "denied"}) grammar.push_back({w, ditransitive_verb_type(), false});
  for (const auto& x : {parse_type("s"), n, iv}) grammar.push_back({"and", coordinator_type(x), true});
  grammar.push_back({"but", coordinator_type(tv), true});

  const auto clean = generate_random_lexicon<S>(grammar, spaces, seed);
  auto words = clean.words();
  for (auto& w : words) {
    if (w.coordinator) w.meaning = with_fault(std::move(w.meaning), fault);
  }
  return Lexicon<S>(spaces, std::move(words));
}

template <Semiring S>
const Tensor<S>& meaning(const Lexicon<S>& lex, const std::string& word, const std::string& type) {
  const auto* w = lex.find(word, parse_type(type));
  if (w == nullptr) throw UnknownWord(word);
  return w->meaning;
}

std::vector<SentenceToken> tokens(std::initializer_list<std::pair<const char*, const char*>> list) {
  std::vector<SentenceToken> out;
  for (const auto& [w, t] : list) out.push_back({w, t});
  return out;
}

const std::string kN = "n", kIV = "n.r s", kTV = "n.r s n.l", kDV = "n.r s n.l n.l";

std::string dims_of(const SpaceAssignment& s) {
  return " dims n=" + std::to_string(s.dim("n")) + " s=" + std::to_string(s.dim("s"));
}

template <Semiring S>
bool both_modes_match(std::span<const SentenceToken> sentence, const Lexicon<S>& lex,
                      const Tensor<S>& expected) {
  return approx_equal(evaluate_sentence(sentence, lex, "s", EvalMode::explicit_network), expected) &&
         approx_equal(evaluate_sentence(sentence, lex, "s", EvalMode::closed_form), expected);
}

template <Semiring S>
void identities_for(const Options& opts, Recorder& rec) {
  using V = typename S::value_type;
  const std::uint64_t suite = std::is_same_v<S, RealSemiring> ? 7 : 8;
  const auto vp_and = format_type(coordinator_type(parse_type(kIV)));
  const auto s_and = format_type(coordinator_type(parse_type("s")));
  const auto but = format_type(coordinator_type(parse_type(kTV)));
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts, suite, t);
    SplitMix64 rng(seed);
    SpaceAssignment spaces;
    spaces.set("n", rng.next_index(1, opts.max_dim));
    spaces.set("s", rng.next_index(1, opts.max_dim));
    const std::size_t dn = spaces.dim("n"), ds = spaces.dim("s");
    const auto lex = fixture_lexicon<S>(spaces, rng.next(), opts.inject_fault);
    const auto& john = meaning(lex, "john", kN);
    const auto& sleep = meaning(lex, "sleeps", kIV);
    const auto& snore = meaning(lex, "snores", kIV);

    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "john sleeps and snores") + dims_of(spaces) + " john=" +
             describe(john) + " sleeps=" + describe(sleep) + " snores=" + describe(snore);
      std::vector<V> out(ds, S::zero());
      for (std::size_t i = 0; i < dn; ++i) {
        for (std::size_t s = 0; s < ds; ++s) {
          out[s] = S::add(out[s], S::mul(john[i], S::mul(sleep[i * ds + s], snore[i * ds + s])));
        }
      }
      const auto sentence = tokens({{"john", "n"}, {"sleeps", "n.r s"}, {"and", vp_and.c_str()},
                                    {"snores", "n.r s"}});
      return both_modes_match<S>(sentence, lex, Tensor<S>({{"s", 0, ds}}, out));
    });

    rec.trial([&](std::string& dump) {
      const auto& bank = meaning(lex, "bank", kN);
      const auto& grant = meaning(lex, "granted", kDV);
      const auto& mary = meaning(lex, "mary", kN);
      const auto& deny = meaning(lex, "denied", kDV);
      const auto& john2 = meaning(lex, "john", kN);
      const auto& loan = meaning(lex, "loan", kN);
      dump = header<S>(seed, "bank granted mary but denied john loan") + dims_of(spaces);
      // grant[i, s, j, m]: subject i, sentence s, direct object j, indirect object m.
      auto verb_at = [&](const Tensor<S>& v, const Tensor<S>& obj, std::size_t i, std::size_t s,
                         std::size_t j) {
        V acc = S::zero();
        for (std::size_t m = 0; m < dn; ++m) {
          acc = S::add(acc, S::mul(v[((i * ds + s) * dn + j) * dn + m], obj[m]));
        }
        return acc;
      };
      std::vector<V> out(ds, S::zero());
      for (std::size_t i = 0; i < dn; ++i) {
        for (std::size_t s = 0; s < ds; ++s) {
          for (std::size_t j = 0; j < dn; ++j) {
            const V merged = S::mul(verb_at(grant, mary, i, s, j), verb_at(deny, john2, i, s, j));
            out[s] = S::add(out[s], S::mul(bank[i], S::mul(merged, loan[j])));
          }
        }
      }
      const auto sentence =
          tokens({{"bank", "n"}, {"granted", kDV.c_str()}, {"mary", "n"}, {"but", but.c_str()},
                  {"denied", kDV.c_str()}, {"john", "n"}, {"loan", "n"}});
      return both_modes_match<S>(sentence, lex, Tensor<S>({{"s", 0, ds}}, out));
    });

    rec.trial([&](std::string& dump) {
      const auto& men = meaning(lex, "men", kN);
      const auto& watch = meaning(lex, "watch", kTV);
      const auto& football = meaning(lex, "football", kN);
      const auto& women = meaning(lex, "women", kN);
      const auto& knit = meaning(lex, "knit", kIV);
      dump = header<S>(seed, "men watch football and women knit") + dims_of(spaces);
      std::vector<V> first(ds, S::zero()), second(ds, S::zero()), out(ds);
      for (std::size_t i = 0; i < dn; ++i) {
        for (std::size_t s = 0; s < ds; ++s) {
          for (std::size_t j = 0; j < dn; ++j) {
            first[s] = S::add(first[s],
                              S::mul(men[i], S::mul(watch[(i * ds + s) * dn + j], football[j])));
          }
          second[s] = S::add(second[s], S::mul(women[i], knit[i * ds + s]));
        }
      }
      for (std::size_t s = 0; s < ds; ++s) out[s] = S::mul(first[s], second[s]);
      const auto sentence = tokens({{"men", "n"}, {"watch", kTV.c_str()}, {"football", "n"},
                                    {"and", s_and.c_str()}, {"women", "n"}, {"knit", kIV.c_str()}});
      return both_modes_match<S>(sentence, lex, Tensor<S>({{"s", 0, ds}}, out));
    });
  }
}

template <Semiring S>
void subject_copying_for(const Options& opts, Recorder& rec) {
  const std::uint64_t suite = std::is_same_v<S, RealSemiring> ? 9 : 10;
  const auto vp_and = format_type(coordinator_type(parse_type(kIV)));
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts, suite, t);
    SplitMix64 rng(seed);
    SpaceAssignment spaces;
    spaces.set("n", rng.next_index(1, opts.max_dim));
    spaces.set("s", rng.next_index(1, opts.max_dim));
    const std::size_t dn = spaces.dim("n"), ds = spaces.dim("s");
    const auto base = fixture_lexicon<S>(spaces, rng.next(), opts.inject_fault);
    rec.trial([&](std::string& dump) {
      dump = header<S>(seed, "subject copying") + dims_of(spaces);
      const auto& sleep = meaning(base, "sleeps", kIV);
      const auto& snore = meaning(base, "snores", kIV);
      for (std::size_t i = 0; i < dn; ++i) {
        auto words = base.words();
        for (auto& w : words) {
          if (w.word == "john") {
            auto e = Tensor<S>::zeros(spaces.wires(parse_type("n")));
            e.mutable_data()[i] = S::one();
            w.meaning = std::move(e);
          }
        }
        const Lexicon<S> lex(spaces, std::move(words));
        std::vector<typename S::value_type> rows(ds);
        for (std::size_t s = 0; s < ds; ++s) rows[s] = S::mul(sleep[i * ds + s], snore[i * ds + s]);
        const auto sentence = tokens({{"john", "n"}, {"sleeps", "n.r s"}, {"and", vp_and.c_str()},
                                      {"snores", "n.r s"}});
        const auto got = evaluate_sentence(sentence, lex, "s", EvalMode::explicit_network);
        if (!approx_equal(got, Tensor<S>({{"s", 0, ds}}, rows))) {
          dump += " subject=e_" + std::to_string(i) + " got=" + describe(got);
          return false;
        }
      }
      return true;
    });
  }
}

template <Semiring S>
void stripping_for(const Options& opts, Recorder& rec) {
  const std::uint64_t suite = std::is_same_v<S, RealSemiring> ? 11 : 12;
  const auto np_and = format_type(coordinator_type(parse_type("n")));
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts, suite, t);
    SplitMix64 rng(seed);
    SpaceAssignment spaces;
    spaces.set("n", rng.next_index(1, opts.max_dim));
    spaces.set("s", rng.next_index(1, opts.max_dim));
    const auto lex = fixture_lexicon<S>(spaces, rng.next(), opts.inject_fault);
    rec.trial([&](std::string& dump) {
      const auto& john = meaning(lex, "john", kN);
      const auto& likes = meaning(lex, "likes", kTV);
      const auto& poe = meaning(lex, "poe", kN);
      const auto& lovecraft = meaning(lex, "lovecraft", kN);
      dump = header<S>(seed, "stripping") + dims_of(spaces) + " john=" + describe(john) +
             " likes=" + describe(likes) + " poe=" + describe(poe) +
             " lovecraft=" + describe(lovecraft);
      const auto stripped = stripping_sentence(john, likes, poe, lovecraft);
      const auto canonical = evaluate_sentence(
          tokens({{"john", "n"}, {"likes", kTV.c_str()}, {"poe", "n"}, {"and", np_and.c_str()},
                  {"lovecraft", "n"}}),
          lex, "s", EvalMode::explicit_network);
      return approx_equal(stripped, canonical);
    });
  }
}

using Bool = BooleanSemiring;

std::set<std::size_t> members(const BoolTensor& v) {
  std::set<std::size_t> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) out.insert(k);
  }
  return out;
}

std::set<std::pair<std::size_t, std::size_t>> pairs_of(const BoolTensor& m) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const std::size_t cols = m.wires()[1].dim;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] != 0) out.insert({k / cols, k % cols});
  }
  return out;
}

template <typename T>
std::set<T> intersect(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

}  // namespace

SuiteResult frobenius_axioms(const Options& opts) {
  Recorder rec("frobenius-axioms");
  frobenius_for<RealSemiring>(opts, rec);
  frobenius_for<BooleanSemiring>(opts, rec);
  return rec.take();
}

SuiteResult snake_equations(const Options& opts) {
  Recorder rec("snake-equations");
  snakes_for<RealSemiring>(opts, rec);
  snakes_for<BooleanSemiring>(opts, rec);
  return rec.take();
}

SuiteResult coordinator_equivalence(const Options& opts) {
  Recorder rec("coordinator-equivalence");
  coordinator_for<RealSemiring>(opts, rec);
  coordinator_for<BooleanSemiring>(opts, rec);
  return rec.take();
}

SuiteResult sentence_identities(const Options& opts) {
  Recorder rec("sentence-identities");
  identities_for<RealSemiring>(opts, rec);
  identities_for<BooleanSemiring>(opts, rec);
  return rec.take();
}

SuiteResult subject_copying(const Options& opts) {
  Recorder rec("subject-copying");
  subject_copying_for<RealSemiring>(opts, rec);
  subject_copying_for<BooleanSemiring>(opts, rec);
  return rec.take();
}

SuiteResult stripping_equality(const Options& opts) {
  Recorder rec("stripping-equality");
  stripping_for<RealSemiring>(opts, rec);
  stripping_for<BooleanSemiring>(opts, rec);
  return rec.take();
}

SuiteResult rel_intersection(const Options& opts) {
  Recorder rec("rel-intersection");
  const auto n = parse_type("n");
  const auto iv = parse_type("n.r s");
  const std::size_t max_universe = std::max<std::size_t>(opts.max_dim, 6);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts, 13, t);
    SplitMix64 rng(seed);
    SpaceAssignment spaces;
    spaces.set("n", rng.next_index(1, max_universe));
    spaces.set("s", rng.next_index(1, max_universe));
    const auto a = random_tensor<Bool>(spaces.wires(n), rng);
    const auto b = random_tensor<Bool>(spaces.wires(n), rng);
    const auto subj = random_tensor<Bool>(spaces.wires(n), rng);
    const auto r1 = random_tensor<Bool>(spaces.wires(iv), rng);
    const auto r2 = random_tensor<Bool>(spaces.wires(iv), rng);
    const auto noun_conj = with_fault(coordinator_tensor<Bool>(n, spaces), opts.inject_fault);
    const auto verb_conj = with_fault(coordinator_tensor<Bool>(iv, spaces), opts.inject_fault);

    rec.trial([&](std::string& dump) {
      dump = header<Bool>(seed, "noun intersection") + " a=" + describe(a) + " b=" + describe(b);
      const auto d = reduce({n, coordinator_type(n), n}, n);
      const auto got = evaluate(build_network(*d, std::vector<BoolTensor>{a, noun_conj, b}, spaces));
      return members(got) == intersect(members(a), members(b));
    });
    rec.trial([&](std::string& dump) {
      dump = header<Bool>(seed, "relation intersection") + " subject=" + describe(subj) +
             " r1=" + describe(r1) + " r2=" + describe(r2);
      const auto d = reduce({iv, coordinator_type(iv), iv}, iv);
      const auto relation = evaluate(build_network(*d, std::vector<BoolTensor>{r1, verb_conj, r2}, spaces));
      const auto both = intersect(pairs_of(r1), pairs_of(r2));
      if (pairs_of(relation) != both) return false;
      // The image of the subject set under the intersected relation.
      std::set<std::size_t> image;
      for (auto [i, s] : both) {
        if (members(subj).contains(i)) image.insert(s);
      }
      const auto sentence = reduce({n, iv, coordinator_type(iv), iv}, parse_type("s"));
      const auto got = evaluate(build_network(*sentence, std::vector<BoolTensor>{subj, r1, verb_conj, r2}, spaces));
      return members(got) == image;
    });
  }
  return rec.take();
}

SuiteResult contraction_order(const Options& opts) {
  Recorder rec("contraction-order");
  const std::vector<std::vector<SentenceToken>> sentences{
      tokens({{"mary", "n"}, {"likes", "n.r s n.l"}, {"musicals", "n"}}),
      tokens({{"john", "n"}, {"sleeps", "n.r s"}, {"and", "s.r n.r.r n.r s s.l n"},
              {"snores", "n.r s"}}),
      tokens({{"men", "n"}, {"watch", "n.r s n.l"}, {"football", "n"}, {"and", "s.r s s.l"},
              {"women", "n"}, {"knit", "n.r s"}}),
      tokens({{"apples", "n"}, {"and", "n.r n n.l"}, {"oranges", "n"}}),
  };
  const std::vector<std::string> targets{"s", "s", "s", "n"};
  auto run = [&]<Semiring S>(std::uint64_t suite) {
    for (std::size_t t = 0; t < opts.trials; ++t) {
      const auto seed = trial_seed(opts, suite, t);
      SplitMix64 rng(seed);
      SpaceAssignment spaces;
      spaces.set("n", rng.next_index(1, opts.max_dim));
      spaces.set("s", rng.next_index(1, opts.max_dim));
      const auto lex = fixture_lexicon<S>(spaces, rng.next(), false);
      const auto which = t % sentences.size();
      rec.trial([&](std::string& dump) {
        dump = header<S>(seed, "contraction order, sentence " + std::to_string(which)) +
               dims_of(spaces);
        const auto reading = read_typed<S>(sentences[which], lex, parse_type(targets[which]));
        std::vector<Tensor<S>> tensors;
        for (const auto* w : reading.words) tensors.push_back(w->meaning);
        const auto net = build_network(reading.derivation, std::move(tensors), spaces);
        const auto reference = evaluate(net);
        std::vector<std::size_t> order(net.edges.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        for (std::size_t k = order.size(); k > 1; --k) {
          std::swap(order[k - 1], order[rng.next_index(0, k - 1)]);
        }
        const auto shuffled = evaluate(net, std::span<const std::size_t>(order));
        if (approx_equal(reference, shuffled)) return true;
        dump += " order=";
        for (auto o : order) dump += std::to_string(o) + ",";
        return false;
      });
    }
  };
  run.template operator()<RealSemiring>(14);
  run.template operator()<BooleanSemiring>(15);
  return rec.take();
}

std::vector<SuiteResult> run_all(const Options& opts) {
  return {frobenius_axioms(opts),  snake_equations(opts),    coordinator_equivalence(opts),
          sentence_identities(opts), subject_copying(opts),    stripping_equality(opts),
          rel_intersection(opts),  contraction_order(opts)};
}

}  // namespace frobcoord::selftest
