/*
 * Copyright 2026 the rieszlogic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// rml: command-line front-end for the Riesz modal logic toolkit.
//
// Exit codes: 0 success, 1 negative semantic result (formulas differ,
// countermodel found, proof rejected, states equivalent), 2 usage or input
// error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "riesz/equivalence.hpp"
#include "riesz/markov.hpp"
#include "riesz/parse.hpp"
#include "riesz/piecewise.hpp"
#include "riesz/proofs.hpp"
#include "riesz/semantics.hpp"

using namespace riesz;
using nlohmann::json;

namespace {

// A formula may mention labels the model does not declare; they act as the
// null measure. Legal, but worth a loud note on stderr.
void warn_missing_labels(const Formula& f, const MarkovProcess& m) {
  std::set<std::string> labels;
  f.collect_labels(labels);
  for (const auto& l : labels)
    if (m.label_index(l) < 0)
      std::cerr << "note: label '" << l
                << "' is not declared by the model; <" << l
                << "> evaluates against the null measure (all zeroes)\n";
}

int run_eval(const std::string& model_path, const std::string& formula,
             bool as_json) {
  MarkovProcess m = MarkovProcess::load(model_path);
  Formula f = parse(formula);
  warn_missing_labels(f, m);
  Valuation v = eval(f, m);
  if (as_json) {
    json out{{"command", "eval"}, {"ok", true}};
    json values = json::array();
    for (int i = 0; i < m.state_count(); ++i)
      values.push_back({{"state", m.states()[i]}, {"value", rat_str(v.values[i])}});
    out["values"] = values;
    std::cout << out.dump() << "\n";
  } else {
    for (int i = 0; i < m.state_count(); ++i)
      std::cout << m.states()[i] << " = " << rat_str(v.values[i]) << "\n";
  }
  return 0;
}

int run_equiv(const std::string& model_path, const std::string& f1,
              const std::string& f2, bool as_json) {
  MarkovProcess m = MarkovProcess::load(model_path);
  Formula pf1 = parse(f1), pf2 = parse(f2);
  warn_missing_labels(pf1, m);
  warn_missing_labels(pf2, m);
  EquivReport r = equiv_on_model(pf1, pf2, m);
  if (as_json) {
    json out{{"command", "equiv"}, {"ok", true}, {"equal", r.equal}};
    if (!r.equal)
      out["witness"] = {{"state", std::get<0>(*r.witness)},
                        {"left", rat_str(std::get<1>(*r.witness))},
                        {"right", rat_str(std::get<2>(*r.witness))}};
    std::cout << out.dump() << "\n";
  } else if (r.equal) {
    std::cout << "EQUAL\n";
  } else {
    std::cout << "DIFFER at " << std::get<0>(*r.witness) << ": "
              << rat_str(std::get<1>(*r.witness)) << " vs "
              << rat_str(std::get<2>(*r.witness)) << "\n";
  }
  return r.equal ? 0 : 1;
}

int run_norm(const std::string& model_path, const std::string& formula,
             bool as_json) {
  MarkovProcess m = MarkovProcess::load(model_path);
  Formula f = parse(formula);
  warn_missing_labels(f, m);
  Rational n = norm_on_model(f, m);
  if (as_json)
    std::cout << json{{"command", "norm"}, {"ok", true}, {"norm", rat_str(n)}}.dump()
              << "\n";
  else
    std::cout << rat_str(n) << "\n";
  return 0;
}

std::string block_str(const MarkovProcess& m, const std::vector<int>& block) {
  std::string s = "{";
  for (size_t i = 0; i < block.size(); ++i) {
    if (i) s += ", ";
    s += m.states()[block[i]];
  }
  return s + "}";
}

std::string partition_str(const MarkovProcess& m, const Partition& p) {
  std::string s;
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    if (i) s += " ";
    s += block_str(m, p.blocks[i]);
  }
  return s;
}

int run_bisim(const std::string& model_path, bool trace, bool as_json) {
  MarkovProcess m = MarkovProcess::load(model_path);
  auto [p, tr] = bisim_partition(m);
  if (as_json) {
    json out{{"command", "bisim"}, {"ok", true}};
    json blocks = json::array();
    for (const auto& b : p.blocks) {
      json blk = json::array();
      for (int s : b) blk.push_back(m.states()[s]);
      blocks.push_back(blk);
    }
    out["blocks"] = blocks;
    if (trace) {
      json steps = json::array();
      for (const auto& st : tr.steps) {
        json splitter = json::array();
        for (int s : st.splitter_block) splitter.push_back(m.states()[s]);
        steps.push_back({{"splitter", splitter},
                         {"label", st.label},
                         {"partition", partition_str(m, st.after)}});
      }
      out["trace"] = steps;
    }
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& b : p.blocks) std::cout << block_str(m, b) << "\n";
    if (trace) {
      std::cout << "trace:\n";
      std::cout << "  start: " << partition_str(m, tr.initial) << "\n";
      for (const auto& st : tr.steps)
        std::cout << "  split by (" << block_str(m, st.splitter_block) << ", "
                  << st.label << ") -> " << partition_str(m, st.after) << "\n";
    }
  }
  return 0;
}

int run_distinguish(const std::string& model_path, const std::string& x,
                    const std::string& y, bool as_json) {
  MarkovProcess m = MarkovProcess::load(model_path);
  try {
    Formula f = distinguishing_formula(m, x, y);
    Rational vx = eval_at(f, m, x), vy = eval_at(f, m, y);
    if (as_json) {
      std::cout << json{{"command", "distinguish"},
                        {"ok", true},
                        {"formula", print(f)},
                        {"left", rat_str(vx)},
                        {"right", rat_str(vy)}}
                       .dump()
                << "\n";
    } else {
      std::cout << print(f) << "\n";
      std::cout << x << " = " << rat_str(vx) << ", " << y << " = "
                << rat_str(vy) << "\n";
    }
    return 0;
  } catch (const EquivalentStatesError&) {
    if (as_json)
      std::cout << json{{"command", "distinguish"},
                        {"ok", false},
                        {"equivalent", true}}
                       .dump()
                << "\n";
    else
      std::cout << "EQUIVALENT\n";
    return 1;
  }
}

int run_search(const std::string& f1, const std::string& f2, int budget,
               int max_states, uint64_t seed, const std::string& out_path,
               bool as_json) {
  SearchOutcome r =
      search_counterexample(parse(f1), parse(f2), budget, max_states, seed);
  switch (r.kind) {
    case SearchOutcome::Kind::Finite: {
      std::ofstream out(out_path);
      if (!out) throw ModelError("cannot write '" + out_path + "'");
      out << r.model->to_json().dump(2) << "\n";
      if (as_json) {
        std::cout << json{{"command", "search"},   {"ok", true},
                          {"kind", "finite"},      {"model", out_path},
                          {"state", r.state},      {"left", rat_str(r.value1)},
                          {"right", rat_str(r.value2)}}
                         .dump()
                  << "\n";
      } else {
        std::cout << "COUNTERMODEL " << out_path << " state " << r.state
                  << ": " << rat_str(r.value1) << " vs " << rat_str(r.value2)
                  << "\n";
      }
      return 1;
    }
    case SearchOutcome::Kind::Symbolic:
      if (as_json) {
        std::cout << json{{"command", "search"},
                          {"ok", true},
                          {"kind", "unit-interval"},
                          {"point", rat_str(r.point)},
                          {"left", rat_str(r.value1)},
                          {"right", rat_str(r.value2)}}
                         .dump()
                  << "\n";
      } else {
        std::cout << "COUNTERMODEL unit-interval at " << rat_str(r.point)
                  << ": " << rat_str(r.value1) << " vs " << rat_str(r.value2)
                  << "\n";
      }
      return 1;
    default:
      if (as_json)
        std::cout << json{{"command", "search"},
                          {"ok", true},
                          {"kind", "inconclusive"},
                          {"models_tried", r.models_tried}}
                         .dump()
                  << "\n";
      else
        std::cout << "INCONCLUSIVE after " << r.models_tried << " models\n";
      return 0;
  }
}

int run_sympoly(const std::string& formula, const std::string& at,
                bool as_json) {
  Formula f = parse(formula);
  if (!at.empty()) {
    auto x = parse_rational(at);
    if (!x) throw std::invalid_argument("malformed rational '" + at + "'");
    Rational v = eval_pointwise(f, *x);
    if (as_json)
      std::cout << json{{"command", "sympoly"},
                        {"ok", true},
                        {"at", rat_str(*x)},
                        {"value", rat_str(v)}}
                       .dump()
                << "\n";
    else
      std::cout << rat_str(v) << "\n";
    return 0;
  }
  PiecewisePoly pp = eval_symbolic(f);
  if (as_json) {
    json out{{"command", "sympoly"}, {"ok", true}};
    json pieces = json::array();
    for (int k = 0; k < pp.cell_count(); ++k)
      pieces.push_back(poly_str(pp.pieces[k]));
    json breaks = json::array();
    for (const auto& b : pp.breaks) {
      if (b.is_rational()) {
        breaks.push_back({{"exact", rat_str(b.value())}});
      } else {
        breaks.push_back({{"defining", poly_str(integer_normal_form(b.defining()))},
                          {"lo", rat_str(b.lo())},
                          {"hi", rat_str(b.hi())}});
      }
    }
    out["pieces"] = pieces;
    out["breakpoints"] = breaks;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << pp_dump(pp);
  }
  return 0;
}

int run_approx(const std::string& formula, const std::string& eps_text,
               bool as_json) {
  auto eps = parse_rational(eps_text);
  if (!eps) throw std::invalid_argument("malformed rational '" + eps_text + "'");
  Formula f = parse(formula);
  Formula out = rational_approx(f, *eps);
  if (as_json)
    std::cout << json{{"command", "approx"}, {"ok", true}, {"formula", print(out)}}
                     .dump()
              << "\n";
  else
    std::cout << print(out) << "\n";
  return 0;
}

int run_check(const std::string& path, bool as_json) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Derivation d = parse_derivation(buf.str());
  CheckResult r = check(d);
  if (r.ok) {
    if (as_json)
      std::cout << json{{"command", "check"},
                        {"ok", true},
                        {"proven", equation_str(r.proven)},
                        {"steps", d.steps.size()}}
                       .dump()
                << "\n";
    else
      std::cout << "OK: " << equation_str(r.proven) << "\n";
    return 0;
  }
  if (as_json)
    std::cout << json{{"command", "check"},
                      {"ok", false},
                      {"step", r.error.step},
                      {"kind", proof_error_kind_str(r.error.kind)},
                      {"message", r.error.message}}
                     .dump()
              << "\n";
  else
    std::cout << "FAIL step " << r.error.step << " ("
              << proof_error_kind_str(r.error.kind) << "): " << r.error.message
              << "\n";
  return 1;
}

int run_translate(const std::string& formula, bool as_json) {
  Formula f = parse_extended(formula);
  if (as_json)
    std::cout << json{{"command", "translate"}, {"ok", true}, {"formula", print(f)}}
                     .dump()
              << "\n";
  else
    std::cout << print(f) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz modal logic toolkit: exact evaluation, bisimulation and "
               "equational proofs over finite subprobabilistic processes"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string model_path, formula, formula2, state_x, state_y, at, eps,
      proof_path, out_path = "countermodel.json";
  int budget = 100, max_states = 6;
  uint64_t seed = 0;

  auto* c_eval = app.add_subcommand("eval", "per-state exact values");
  c_eval->add_option("-m,--model", model_path, "model JSON file")->required();
  c_eval->add_option("-f,--formula", formula, "formula")->required();

  auto* c_equiv = app.add_subcommand("equiv", "compare two formulas on a model");
  c_equiv->add_option("-m,--model", model_path)->required();
  c_equiv->add_option("-f,--formula", formula)->required();
  c_equiv->add_option("-g,--formula2", formula2)->required();

  auto* c_norm = app.add_subcommand("norm", "unit norm on a model");
  c_norm->add_option("-m,--model", model_path)->required();
  c_norm->add_option("-f,--formula", formula)->required();

  bool trace = false;
  auto* c_bisim = app.add_subcommand("bisim", "coarsest bisimulation partition");
  c_bisim->add_option("-m,--model", model_path)->required();
  c_bisim->add_flag("--trace", trace, "print the refinement trace");

  auto* c_dist = app.add_subcommand("distinguish",
                                    "certificate formula for two states");
  c_dist->add_option("-m,--model", model_path)->required();
  c_dist->add_option("-x", state_x, "first state")->required();
  c_dist->add_option("-y", state_y, "second state")->required();

  auto* c_search = app.add_subcommand("search", "look for a countermodel");
  c_search->add_option("-f,--formula", formula)->required();
  c_search->add_option("-g,--formula2", formula2)->required();
  c_search->add_option("--budget", budget, "number of models to try");
  c_search->add_option("--max-states", max_states, "largest random model");
  c_search->add_option("--seed", seed, "sampler seed")->required();
  c_search->add_option("--out", out_path, "countermodel output file");

  auto* c_sym = app.add_subcommand("sympoly",
                                   "piecewise-polynomial unit-interval semantics");
  c_sym->add_option("-f,--formula", formula)->required();
  c_sym->add_option("--at", at, "evaluate at a rational point instead");

  auto* c_approx = app.add_subcommand("approx", "round coefficients within eps");
  c_approx->add_option("-f,--formula", formula)->required();
  c_approx->add_option("--eps", eps, "sup-norm budget (rational)")->required();

  auto* c_check = app.add_subcommand("check", "check an equational derivation");
  c_check->add_option("file", proof_path, "derivation file")->required();

  auto* c_tr = app.add_subcommand("translate",
                                  "expand (+), (.), (-) into the core syntax");
  c_tr->add_option("-f,--formula", formula)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_eval->parsed()) return run_eval(model_path, formula, as_json);
    if (c_equiv->parsed()) return run_equiv(model_path, formula, formula2, as_json);
    if (c_norm->parsed()) return run_norm(model_path, formula, as_json);
    if (c_bisim->parsed()) return run_bisim(model_path, trace, as_json);
    if (c_dist->parsed()) return run_distinguish(model_path, state_x, state_y, as_json);
    if (c_search->parsed())
      return run_search(formula, formula2, budget, max_states, seed, out_path,
                        as_json);
    if (c_sym->parsed()) return run_sympoly(formula, at, as_json);
    if (c_approx->parsed()) return run_approx(formula, eps, as_json);
    if (c_check->parsed()) return run_check(proof_path, as_json);
    if (c_tr->parsed()) return run_translate(formula, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
