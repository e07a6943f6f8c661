#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "efalloc/compact.hpp"
#include "efalloc/deciders.hpp"
#include "efalloc/efprob.hpp"
#include "efalloc/solvers.hpp"

namespace efalloc::cli {

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MethodModelMismatch:
    case ErrorKind::NotIndependentModel:
      return kMethodMismatch;
    case ErrorKind::CapExceeded:
    case ErrorKind::EnumerationCapExceeded:
    case ErrorKind::MatrixEnumerationCapExceeded:
    case ErrorKind::SearchCapExceeded:
      return kCapExceeded;
    default:
      return kInvalidInput;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json report(const char* command, const std::string& digest, json params, const RunOptions& opts, json result,
            Clock::time_point start) {
  json r;
  r["command"] = command;
  r["instance"] = digest;
  params["threads"] = opts.threads;
  params["cap"] = opts.cap;
  r["parameters"] = std::move(params);
  r["seed"] = opts.seed;
  r["result"] = std::move(result);
  if (opts.timing) r["wall_time_ms"] = elapsed_ms(start);
  return r;
}

Prob parse_epsilon(const std::string& text) {
  try {
    return Prob::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::InvalidParams, "epsilon: " + std::string(e.what()));
  }
}

json names_of(const Instance& inst, const std::vector<HouseId>& hs) {
  json out = json::array();
  for (HouseId h : hs) out.push_back(inst.house_name(h));
  return out;
}

// The work behind `solve`, shared with the bench runner. `prob` is left
// empty for a below-epsilon certificate.
struct SolveOutcome {
  json result;
  std::optional<std::string> prob;
};

SolveOutcome solve(const Instance& inst, const std::string& method, const std::optional<std::string>& epsilon,
                   const RunOptions& opts) {
  if (method == "enumerate") {
    if (!inst.is_independent())
      throw Error(ErrorKind::MethodModelMismatch, "enumerate needs an independent model, not joint");
    const auto r = solve_max_prob_ef_enumerate(inst, {opts.cap, {opts.threads}});
    return {json{{"allocation", io::allocation_to_json(inst, r.allocation)},
                 {"prob", r.prob.str()},
                 {"subset", names_of(inst, r.subset)},
                 {"zero_probability", r.zero_probability}},
            r.prob.str()};
  }
  if (method == "brute") {
    const auto r = brute_force_max_prob_ef(inst, opts.cap);
    return {json{{"allocation", io::allocation_to_json(inst, r.allocation)},
                 {"prob", r.prob.str()},
                 {"zero_probability", r.zero_probability}},
            r.prob.str()};
  }
  if (method == "compact-eps") {
    if (inst.model() != Model::Compact)
      throw Error(ErrorKind::MethodModelMismatch, "compact-eps needs a compact instance");
    if (!epsilon) throw Error(ErrorKind::InvalidParams, "compact-eps needs --epsilon");
    const Prob eps = parse_epsilon(*epsilon);
    const auto r = max_prob_ef_compact(inst.compact(), eps, {opts.cap, {opts.threads}});
    if (const auto* opt = std::get_if<CompactOptimal>(&r))
      return {json{{"allocation", io::allocation_to_json(inst, opt->allocation)}, {"prob", opt->prob.str()}},
              opt->prob.str()};
    return {json{{"below_epsilon", std::get<BelowEpsilon>(r).epsilon.str()}}, std::nullopt};
  }
  throw Error(ErrorKind::InvalidParams, "unknown solve method \"" + method + "\"");
}

Decision decide(const Instance& inst, const std::string& property, const std::string& method,
                const RunOptions& opts) {
  const bool possible = property == "possible";
  if (!possible && property != "certain")
    throw Error(ErrorKind::InvalidParams, "property must be possible or certain, not \"" + property + "\"");
  const DecideOptions dopts{opts.cap, {opts.threads}};
  if (method == "auto") return possible ? decide_possibly_ef(inst, dopts) : decide_certainly_ef(inst, dopts);
  if (method == "exhaustive")
    return possible ? exhaustive_possibly_ef(inst, dopts) : exhaustive_certainly_ef(inst, dopts);
  if (method == "polynomial") {
    const bool available = inst.model() == Model::Compact || (possible && inst.model() == Model::Joint);
    if (!available)
      throw Error(ErrorKind::MethodModelMismatch, "no polynomial decider for " + property + " EF under the " +
                                                      std::string(to_string(inst.model())) + " model");
    return possible ? decide_possibly_ef(inst, dopts) : decide_certainly_ef(inst, dopts);
  }
  throw Error(ErrorKind::InvalidParams, "decide method must be auto, polynomial or exhaustive");
}

json decision_json(const Instance& inst, const Decision& d) {
  json r;
  r["answer"] = d.answer ? "yes" : "no";
  r["method"] = std::string(to_string(d.method));
  if (d.witness) {
    r["witness"] = io::allocation_to_json(inst, *d.witness);
    r["witness_prob"] = ef_prob(inst, *d.witness).str();
  } else {
    r["witness"] = nullptr;
  }
  return r;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParams, "class sizes must be comma-separated integers, got \"" + text + "\"");
    }
  }
  return out;
}

const std::string& need_input(const GenRequest& req) {
  if (req.input.empty()) throw Error(ErrorKind::InvalidParams, req.kind + " needs --input");
  return req.input;
}

}  // namespace

json cmd_prob(const std::string& instance_path, const std::string& alloc_path, const RunOptions& opts) {
  const auto start = Clock::now();
  const Instance inst = io::read_instance(instance_path);
  const Allocation w = io::allocation_from_json(io::read_json(alloc_path), inst);
  const AgentEnvyReport rep = ef_report(inst, w);

  json agents = json::array();
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    json a{{"agent", i}, {"house", inst.house_name(w[i])}, {"non_envy", rep.non_envy[i].str()}};
    if (inst.model() == Model::Compact && rep.tied_with[i].size() > 1) a["tied_with"] = rep.tied_with[i];
    agents.push_back(std::move(a));
  }
  json result{{"prob", rep.overall.str()}, {"allocation", io::allocation_to_json(inst, w)}, {"agents", agents}};
  return report("prob", io::digest(inst), json{{"allocation", alloc_path}}, opts, std::move(result), start);
}

json cmd_solve(const std::string& instance_path, const std::string& method, const std::optional<std::string>& epsilon,
               const RunOptions& opts) {
  const auto start = Clock::now();
  const Instance inst = io::read_instance(instance_path);
  auto outcome = solve(inst, method, epsilon, opts);
  json params{{"method", method}};
  if (epsilon) params["epsilon"] = parse_epsilon(*epsilon).str();
  return report("solve", io::digest(inst), std::move(params), opts, std::move(outcome.result), start);
}

json cmd_decide(const std::string& instance_path, const std::string& property, const std::string& method,
                const RunOptions& opts) {
  const auto start = Clock::now();
  const Instance inst = io::read_instance(instance_path);
  const Decision d = decide(inst, property, method, opts);
  return report("decide", io::digest(inst), json{{"property", property}, {"method", method}}, opts,
                decision_json(inst, d), start);
}

Instance generate(const GenRequest& req, std::uint64_t seed) {
  if (req.kind == "random") {
    RandomParams p;
    p.model = parse_model(req.model);
    p.agents = req.agents;
    p.houses = req.houses;
    p.support = req.support;
    if (!req.classes.empty()) p.class_sizes = parse_sizes(req.classes);
    p.tie_percent = req.ties;
    p.pairwise_grid = req.grid;
    p.seed = seed;
    return gen_random(p);
  }
  if (req.kind == "r3xc") return gen_r3xc_reduction(io::r3xc_from_json(io::read_json(need_input(req))));
  if (req.kind == "independent-set")
    return gen_independent_set_reduction(io::graph_from_json(io::read_json(need_input(req))), req.k,
                                         GadgetConfig{req.alpha, 1, 1})
        .instance;
  if (req.kind == "is-pairwise")
    return gen_is_pairwise_reduction(io::graph_from_json(io::read_json(need_input(req))), req.k);
  if (req.kind == "lottery-to-joint" || req.kind == "lottery-to-pairwise") {
    const Instance src = io::read_instance(need_input(req));
    if (src.model() != Model::Lottery) throw Error(ErrorKind::InvalidParams, req.kind + " needs a lottery instance");
    return req.kind == "lottery-to-joint" ? gen_lottery_to_joint(src) : gen_lottery_to_pairwise(src);
  }
  if (req.kind == "single-penalty") return gen_single_penalty_shell().instance;
  if (req.kind == "double-penalty") return gen_double_penalty_shell().instance;
  throw Error(ErrorKind::InvalidParams, "unknown generator \"" + req.kind + "\"");
}

json cmd_gen(const GenRequest& req, const RunOptions& opts) {
  const auto start = Clock::now();
  const Instance inst = generate(req, opts.seed);
  const std::string text = io::dump_instance(inst);
  json result{{"agents", inst.num_agents()}, {"houses", inst.num_houses()}};
  if (!req.out.empty()) {
    io::write_text(req.out, text);
    result["path"] = req.out;
  } else {
    result["instance"] = io::instance_to_json(inst);
  }
  json params{{"kind", req.kind}};
  if (req.kind == "random") {
    params["model"] = req.model;
    params["agents"] = req.agents;
    params["houses"] = req.houses;
  }
  if (!req.input.empty()) params["input"] = req.input;
  return report("gen", io::digest(inst), std::move(params), opts, std::move(result), start);
}

namespace {

GenRequest gen_request_from(const json& g) {
  GenRequest req;
  if (!g.is_object()) throw Error(ErrorKind::ParseError, "bench case \"gen\" must be an object");
  auto get = [&](const char* key, auto& slot) {
    if (auto it = g.find(key); it != g.end()) {
      try {
        it->get_to(slot);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("bench case gen.") + key + ": " + e.what());
      }
    }
  };
  get("kind", req.kind);
  get("model", req.model);
  get("agents", req.agents);
  get("houses", req.houses);
  get("support", req.support);
  get("classes", req.classes);
  get("ties", req.ties);
  get("grid", req.grid);
  get("input", req.input);
  get("k", req.k);
  get("alpha", req.alpha);
  return req;
}

struct BenchCase {
  GenRequest gen;
  std::vector<std::uint64_t> seeds;
  std::string method;
  std::optional<std::string> epsilon;
};

std::vector<BenchCase> parse_suite(const json& doc) {
  if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array())
    throw Error(ErrorKind::ParseError, "bench suite needs a \"cases\" array");
  std::vector<BenchCase> cases;
  for (const auto& c : doc["cases"]) {
    if (!c.is_object() || !c.contains("method") || !c["method"].is_string())
      throw Error(ErrorKind::ParseError, "each bench case needs a \"method\" string");
    BenchCase bc;
    bc.gen = gen_request_from(c.contains("gen") ? c["gen"] : json::object());
    bc.method = c["method"].get<std::string>();
    if (c.contains("epsilon")) {
      if (!c["epsilon"].is_string()) throw Error(ErrorKind::ParseError, "epsilon must be a string such as \"1/2\"");
      bc.epsilon = c["epsilon"].get<std::string>();
    }
    try {
      if (c.contains("seeds")) bc.seeds = c["seeds"].get<std::vector<std::uint64_t>>();
      else bc.seeds = {c.value("seed", std::uint64_t{0})};
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, std::string("bench seeds: ") + e.what());
    }
    cases.push_back(std::move(bc));
  }
  return cases;
}

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

ExitCode cmd_bench(const std::string& suite_path, const RunOptions& opts, std::ostream& csv) {
  const auto cases = parse_suite(io::read_json(suite_path));
  csv << kBenchHeader << "\n";
  ExitCode code = kOk;
  for (const auto& c : cases) {
    for (const auto seed : c.seeds) {
      std::string n, m, model, prob, status = "ok";
      const auto start = Clock::now();
      try {
        const Instance inst = generate(c.gen, seed);
        n = std::to_string(inst.num_agents());
        m = std::to_string(inst.num_houses());
        model = std::string(to_string(inst.model()));
        RunOptions run = opts;
        run.seed = seed;
        if (c.method == "possible" || c.method == "certain") {
          const Decision d = decide(inst, c.method, "auto", run);
          if (d.answer) prob = ef_prob(inst, *d.witness).str();
          else status = "no";
        } else {
          auto outcome = solve(inst, c.method, c.epsilon, run);
          if (outcome.prob) prob = *outcome.prob;
          else status = "below_epsilon";
        }
      } catch (const Error& e) {
        status = std::string(to_string(e.kind()));
        if (code == kOk) code = exit_code_for(e.kind());
      }
      csv << n << ',' << m << ',' << model << ',' << c.method << ',' << prob << ',' << fixed3(elapsed_ms(start)) << ','
          << seed << ',' << status << "\n";
    }
  }
  return code;
}

}  // namespace efalloc::cli
