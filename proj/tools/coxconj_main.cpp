// coxconj: conjugacy computations in finitely generated Coxeter groups.
//
// Subcommands take a system file (see README for the format) and words as
// whitespace-separated generator labels; the empty string is the identity.
//
// Exit codes: 0 success / decision true; 1 decision false or verification
// failures; 2 usage or parse errors; 3 resource caps; 4 internal defects.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cox/complex.hpp"
#include "cox/conjugacy.hpp"
#include "cox/element.hpp"
#include "cox/system.hpp"
#include "cox/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw cox::ParseError(cox::ParseError::Kind::MalformedHeader, 0,
                          "cannot open system file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string element_str(const cox::Element& e) { return e.str(); }

json labels_of(const cox::CoxeterSystem& sys, cox::GenSubset I) {
  json out = json::array();
  for (cox::Gen g : I.members()) out.push_back(sys.label(g));
  return out;
}

json certificate_json(const cox::CoxeterSystem& sys,
                      const cox::ConjCertificate& cert) {
  json steps = json::array();
  for (const cox::CertStep& s : cert.steps) {
    json step;
    switch (s.kind) {
      case cox::CertStep::Kind::ShiftDown:
        step["kind"] = "shift_down";
        step["s"] = sys.label(s.s);
        break;
      case cox::CertStep::Kind::ShiftUp:
        step["kind"] = "shift_up";
        step["s"] = sys.label(s.s);
        break;
      case cox::CertStep::Kind::TightShift:
        step["kind"] = "tight_shift";
        step["s"] = sys.label(s.s);
        break;
      case cox::CertStep::Kind::TightParabolic:
        step["kind"] = "tight_parabolic";
        step["I"] = labels_of(sys, s.I);
        step["x"] = element_str(s.x);
        break;
    }
    step["from"] = element_str(s.from);
    step["to"] = element_str(s.to);
    steps.push_back(std::move(step));
  }
  return json{{"steps", std::move(steps)}};
}

// ---------------------------------------------------------------------------

int cmd_reduce(const cox::CoxeterSystem& sys, const std::string& word_text) {
  const cox::Word w = sys.parse_word(word_text);
  const cox::Element e = cox::reduce(sys, w);
  emit(json{{"nf", element_str(e)},
            {"length", e.length()},
            {"reduced_input", static_cast<int>(w.size()) == e.length()}});
  return kExitTrue;
}

int cmd_conj_min(const cox::CoxeterSystem& sys, const std::string& word_text,
                 bool all) {
  const cox::Element e = cox::reduce(sys, sys.parse_word(word_text));
  cox::ConjClassSummary summary = cox::conj_min(e);
  json out{{"min_length", summary.min_length},
           {"representative", element_str(summary.o_min.front())}};
  if (all) {
    json o_min = json::array();
    for (const cox::Element& m : summary.o_min)
      o_min.push_back(element_str(m));
    out["o_min"] = std::move(o_min);
  }
  emit(out);
  return kExitTrue;
}

int cmd_conj_test(const cox::CoxeterSystem& sys, const std::string& w1,
                  const std::string& w2) {
  const cox::Element a = cox::reduce(sys, sys.parse_word(w1));
  const cox::Element b = cox::reduce(sys, sys.parse_word(w2));
  auto cert = cox::are_conjugate(a, b);
  if (!cert) {
    emit(json{{"conjugate", false}});
    return kExitFalse;
  }
  emit(json{{"conjugate", true},
            {"certificate", certificate_json(sys, *cert)}});
  return kExitTrue;
}

int cmd_tight_graph(const cox::CoxeterSystem& sys,
                    const std::string& word_text,
                    const std::optional<std::string>& dot_path) {
  const cox::Element e = cox::reduce(sys, sys.parse_word(word_text));
  cox::ShiftClosureResult sc = cox::shift_closure(e);
  cox::TightClosureResult tc = cox::tight_closure(sc.min_rep);

  std::set<cox::Element> node_set(sc.set.begin(), sc.set.end());
  node_set.insert(tc.set.begin(), tc.set.end());
  std::vector<cox::Element> nodes(node_set.begin(), node_set.end());
  std::map<cox::Word, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    index.emplace(nodes[i].word(), i);

  // Induced edges between the computed nodes, one per (src, dst, kind) with
  // the lexicographically least witness.
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::string>
      edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int s = 0; s < sys.rank(); ++s) {
      auto stepped = cox::shift_step(nodes[i], static_cast<cox::Gen>(s));
      if (!stepped || *stepped == nodes[i]) continue;
      auto it = index.find(stepped->word());
      if (it == index.end()) continue;
      const bool equal_len = stepped->length() == nodes[i].length();
      edges.try_emplace(
          {i, it->second, equal_len ? "tight1" : "shift"},
          (equal_len ? "tight1:" : "shift:") + sys.label(
              static_cast<cox::Gen>(s)));
    }
    for (const cox::TightStep& step : cox::tight_neighbors(nodes[i])) {
      if (step.kind != cox::TightStep::Kind::Parabolic) continue;
      if (step.to == nodes[i]) continue;
      auto it = index.find(step.to.word());
      if (it == index.end()) continue;
      std::string ilabel = "{";
      bool first = true;
      for (cox::Gen g : step.I.members()) {
        if (!first) ilabel += ' ';
        first = false;
        ilabel += sys.label(g);
      }
      ilabel += '}';
      edges.try_emplace({i, it->second, "tight2"},
                        "tight2:" + ilabel + "," + element_str(step.x));
    }
  }

  std::ostringstream dot;
  dot << "digraph tight_graph {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string label =
        nodes[i].is_identity() ? "e" : element_str(nodes[i]);
    dot << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [key, label] : edges)
    dot << "  n" << std::get<0>(key) << " -> n" << std::get<1>(key)
        << " [label=\"" << label << "\"];\n";
  dot << "}\n";

  if (dot_path) {
    std::ofstream out(*dot_path, std::ios::binary);
    if (!out)
      throw cox::DomainError("cannot write DOT file '" + *dot_path + "'");
    out << dot.str();
    emit(json{{"nodes", nodes.size()},
              {"edges", edges.size()},
              {"dot", *dot_path}});
  } else {
    std::cout << dot.str();
  }
  return kExitTrue;
}

int cmd_straight(const cox::CoxeterSystem& sys, const std::string& word_text,
                 int nmax) {
  const cox::Element e = cox::reduce(sys, sys.parse_word(word_text));
  cox::Element power = e;
  for (int n = 2; n <= nmax; ++n) {
    power = cox::multiply(power, e);
    if (power.length() != n * e.length()) {
      emit(json{{"straight_up_to", n - 1}, {"fails_at", n}});
      return kExitFalse;
    }
  }
  emit(json{{"straight_up_to", nmax}});
  return kExitTrue;
}

int cmd_verify(const cox::CoxeterSystem& sys, const std::string& system_id,
               const std::string& suite, const cox::SuiteParams& params) {
  cox::RunReport report = cox::run_suite(sys, suite, params, system_id);
  json witnesses = json::array();
  for (const std::string& w : report.witnesses) witnesses.push_back(w);
  emit(json{{"suite", report.suite},
            {"system", report.system_id},
            {"params",
             {{"max_length", report.params.max_length},
              {"radius", report.params.radius},
              {"nmax", report.params.nmax}}},
            {"cases", report.cases},
            {"passes", report.passes()},
            {"failures", report.failures},
            {"failure_witnesses", std::move(witnesses)},
            {"wall_time_ms", report.wall_ms}});
  return report.failures == 0 ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conjugacy computations in finitely generated Coxeter groups"};
  app.require_subcommand(1);

  std::string system_path, word_text, word2_text, suite;
  std::optional<std::string> dot_path;
  bool all = false, corrupt = false;
  int nmax = 8;
  cox::SuiteParams params;

  auto* reduce_cmd = app.add_subcommand("reduce", "canonical reduced form");
  reduce_cmd->add_option("system", system_path)->required();
  reduce_cmd->add_option("word", word_text)->required();

  auto* conjmin_cmd =
      app.add_subcommand("conj-min", "minimal-length conjugates");
  conjmin_cmd->add_option("system", system_path)->required();
  conjmin_cmd->add_option("word", word_text)->required();
  conjmin_cmd->add_flag("--all", all, "list the whole minimal set");

  auto* conjtest_cmd =
      app.add_subcommand("conj-test", "conjugacy decision with certificate");
  conjtest_cmd->add_option("system", system_path)->required();
  conjtest_cmd->add_option("word1", word_text)->required();
  conjtest_cmd->add_option("word2", word2_text)->required();

  auto* graph_cmd =
      app.add_subcommand("tight-graph", "conjugation graph as DOT");
  graph_cmd->add_option("system", system_path)->required();
  graph_cmd->add_option("word", word_text)->required();
  graph_cmd->add_option("--dot", dot_path, "write the DOT file here");

  auto* straight_cmd =
      app.add_subcommand("straight", "bounded straightness certificate");
  straight_cmd->add_option("system", system_path)->required();
  straight_cmd->add_option("word", word_text)->required();
  straight_cmd->add_option("--nmax", nmax, "power bound")->check(
      CLI::PositiveNumber);

  auto* verify_cmd =
      app.add_subcommand("verify", "run a named verification suite");
  verify_cmd->add_option("system", system_path)->required();
  verify_cmd->add_option("--suite", suite, "suite name")->required();
  verify_cmd->add_option("--max-length", params.max_length);
  verify_cmd->add_option("--radius", params.radius);
  verify_cmd->add_option("--nmax", params.nmax);
  verify_cmd->add_option("--samples", params.samples);
  verify_cmd->add_option("--seed", params.seed);
  verify_cmd->add_flag("--corrupt", corrupt,
                       "negative control: corrupt fixtures on purpose");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const cox::CoxeterSystem sys = cox::parse_system(read_file(system_path));
    if (reduce_cmd->parsed()) return cmd_reduce(sys, word_text);
    if (conjmin_cmd->parsed()) return cmd_conj_min(sys, word_text, all);
    if (conjtest_cmd->parsed())
      return cmd_conj_test(sys, word_text, word2_text);
    if (graph_cmd->parsed()) return cmd_tight_graph(sys, word_text, dot_path);
    if (straight_cmd->parsed()) return cmd_straight(sys, word_text, nmax);
    if (verify_cmd->parsed()) {
      params.corrupt = corrupt;
      return cmd_verify(sys, system_path, suite, params);
    }
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const cox::ParseError& e) {
    if (e.line() > 0)
      std::cerr << "parse error (line " << e.line() << "): " << e.what()
                << "\n";
    else
      std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cox::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const cox::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cox::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const cox::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
