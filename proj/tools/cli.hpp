// Copyright 2026 The rrkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 internal error, 2 parse/usage error,
// 3 wrong filter class for the command, 4 alphabet mismatch.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "rrkit/rrkit.hpp"

namespace rrkit::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kWrongClass = 3,
  kAlphabet = 4,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A machine file is `dfa`/`nfa` text, or, with --regex, a bare pattern.
inline Automaton load_automaton(const std::string& path, bool allow_regex) {
  std::string text = read_file(path);
  std::string header = rrkit::detail::header_of(text);
  if (header == "dfa" || header == "nfa" || !allow_regex) return parse_automaton(text);
  std::string pattern;
  for (const auto& line : rrkit::detail::tokenize(text)) {
    for (const auto& tok : line.tokens) pattern += tok;
  }
  return regex_to_nfa(pattern);
}

inline Dfa as_dfa(const Automaton& a) {
  if (const auto* d = std::get_if<Dfa>(&a)) return *d;
  // Subset construction leaves redundant states behind; certificates read
  // better on the minimal machine.
  return minimize(determinize(std::get<Nfa>(a)));
}

inline Nfa as_nfa(const Automaton& a) {
  if (const auto* n = std::get_if<Nfa>(&a)) return *n;
  return to_nfa(std::get<Dfa>(a));
}

// Artifacts go to --out when given, otherwise to stdout.
inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ParseError(0, "cannot write '" + out_path + "'");
  file << text;
}

inline std::string banner(const Classification& c) {
  std::string text = (is_hard(c) ? "HARD\n" : "EASY\n") + to_text(c);
  if (const auto* hard = std::get_if<HardFilter>(&c)) {
    auto [zero, one] = normalize_witness(hard->witness.first_cycle, hard->witness.second_cycle);
    text += "normalized U=" + zero + " V=" + one + "\n";
  }
  return text;
}

}  // namespace detail

struct Options {
  std::string command;
  std::vector<std::string> files;
  std::string out_path;
  std::string word;
  bool regex = false;
  bool nfa = false;
  bool counters = false;
};

inline int execute(const Options& o, std::ostream& out) {
  using namespace detail;
  const auto& f = o.files;
  if (o.command == "classify") {
    Dfa filter = as_dfa(load_automaton(f[0], o.regex));
    emit(banner(classify(filter)), o.out_path, out);
    return kOk;
  }
  if (o.command == "cover") {
    Dfa filter = as_dfa(load_automaton(f[0], o.regex));
    Dfa target = as_dfa(load_automaton(f[1], o.regex));
    auto c = classify(filter);
    if (!is_hard(c)) {
      out << banner(c);
      return kWrongClass;
    }
    Dfst t = cover(filter, target);
    if (!verify_cover(t, filter, target)) throw VerificationError("cover verification failed");
    emit(to_text(t), o.out_path, out);
    out << "VERIFIED image == target\n";
    return kOk;
  }
  if (o.command == "solve") {
    Automaton filter = load_automaton(f[0], o.regex);
    Automaton input = load_automaton(f[1], o.regex);
    std::ostringstream text;
    if (o.counters) {
      Dfa fd = as_dfa(filter);
      auto c = classify(fd);
      const auto* easy = std::get_if<EasyFilter>(&c);
      if (!easy) {
        out << banner(c);
        return kWrongClass;
      }
      auto sol = solve_rr_bounded(easy->decomposition, as_dfa(input));
      if (!sol) {
        text << "NO\n";
      } else {
        text << "YES " << format_word(sol->witness) << "\nexpr " << sol->expression
             << " exponents";
        for (auto e : sol->exponents) text << ' ' << e;
        if (sol->exponents.empty()) text << " -";
        text << '\n';
      }
    } else {
      auto w = o.nfa ? solve_rr_nfa(as_nfa(filter), as_nfa(input))
                     : solve_rr(as_dfa(filter), as_dfa(input));
      text << (w ? "YES " + format_word(*w) : std::string("NO")) << '\n';
    }
    emit(text.str(), o.out_path, out);
    return kOk;
  }
  if (o.command == "reduce") {
    Dfst t = parse_dfst(read_file(f[0]));
    Dfa a = as_dfa(load_automaton(f[1], o.regex));
    emit(to_text(canonicalize(reduce_rr(t, a))), o.out_path, out);
    return kOk;
  }
  if (o.command == "gadget") {
    Digraph g = parse_digraph(read_file(f[0]));
    Word w = parse_word(o.word);
    Alphabet sigma = g.alphabet ? *g.alphabet : alphabet_of(w);
    emit(to_text(reachability_gadget(g, w, sigma)), o.out_path, out);
    return kOk;
  }
  if (o.command == "compose") {
    Dfst t1 = parse_dfst(read_file(f[0]));
    Dfst t2 = parse_dfst(read_file(f[1]));
    emit(to_text(canonicalize(compose_dfst(t1, t2))), o.out_path, out);
    return kOk;
  }
  if (o.command == "image") {
    Dfst t = parse_dfst(read_file(f[0]));
    Dfa a = as_dfa(load_automaton(f[1], o.regex));
    emit(to_text(image_nfa(t, a)), o.out_path, out);
    return kOk;
  }
  if (o.command == "equiv") {
    Nfa a = as_nfa(load_automaton(f[0], o.regex));
    Nfa b = as_nfa(load_automaton(f[1], o.regex));
    auto r = equivalent(a, b);
    std::string text = r ? "EQUIVALENT\n"
                         : "DIFFERENT " + format_word(*r.separator) + " accepted-by " +
                               (r.accepted_by == 0 ? "first" : "second") + "\n";
    emit(text, o.out_path, out);
    return kOk;
  }
  throw ParseError(0, "unknown command '" + o.command + "'");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rrkit: regular realizability toolkit", "rrkit"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Write the artifact to this path");
  };
  auto add_regex = [&](CLI::App* sub) {
    sub->add_flag("--regex", o.regex, "Read headerless machine files as regular expressions");
  };
  struct Spec {
    const char* name;
    const char* help;
    std::vector<const char*> operands;
  };
  const std::vector<Spec> specs = {
      {"classify", "Decide hard/easy and print the certificate", {"filter"}},
      {"cover", "Build and verify a transducer mapping the filter onto the target",
       {"filter", "target"}},
      {"solve", "Decide whether the input machine meets the filter", {"filter", "input"}},
      {"reduce", "Pull an input automaton back along a transducer", {"transducer", "input"}},
      {"gadget", "Build the reachability gadget for a graph", {"graph"}},
      {"compose", "Compose two transducers (first, then second)", {"first", "second"}},
      {"image", "Automaton for the image of a language under a transducer",
       {"transducer", "automaton"}},
      {"equiv", "Check two automata for language equality", {"first", "second"}},
  };
  std::vector<std::string> operands(2);
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    for (std::size_t i = 0; i < spec.operands.size(); ++i) {
      sub->add_option(spec.operands[i], operands[i], "Input file")->required();
    }
    add_out(sub);
    if (std::string(spec.name) != "compose" && std::string(spec.name) != "gadget") add_regex(sub);
    if (std::string(spec.name) == "solve") {
      sub->add_flag("--nfa", o.nfa, "Treat both machines as NFAs");
      sub->add_flag("--counters", o.counters, "Use the counter algorithm (easy filters only)");
    }
    if (std::string(spec.name) == "gadget") {
      sub->add_option("--word", o.word, "Word accepted at the target (- for empty)")->required();
    }
    sub->callback([&o, &operands, spec] {
      o.command = spec.name;
      o.files.assign(operands.begin(), operands.begin() + spec.operands.size());
    });
  }

  std::vector<const char*> argv{"rrkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }
  if (o.nfa && o.counters) {
    err << "error: --nfa and --counters are mutually exclusive\n";
    return kParse;
  }

  try {
    return execute(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const AlphabetError& e) {
    err << "alphabet mismatch: " << e.what() << '\n';
    return kAlphabet;
  } catch (const ClassificationError& e) {
    err << "wrong filter class: " << e.what() << '\n';
    return kWrongClass;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace rrkit::cli
