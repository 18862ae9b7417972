#include "scilla/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "scilla/checks.hpp"
#include "scilla/json_io.hpp"
#include "scilla/lexer.hpp"
#include "scilla/network.hpp"
#include "scilla/parser.hpp"
#include "scilla/predicate.hpp"
#include "scilla/propcheck.hpp"
#include "scilla/runtime.hpp"

namespace scilla::cli {

namespace fs = std::filesystem;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SCILLA_MC_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeed;
}

namespace {

// Raised after the message has been written to the error stream.
struct Failure {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << path << "'\n";
    throw Failure{kExitIoError};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out,
                  std::ostream& err) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write '" << path << "'\n";
    throw Failure{kExitIoError};
  }
}

Json load_json(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  try {
    return parse_json_text(text);
  } catch (const SchemaError& e) {
    err << path << ": error: " << e.what() << '\n';
    throw Failure{kExitSchemaError};
  }
}

std::shared_ptr<const ContractDef> parse_file(const std::string& path, std::ostream& err) {
  const std::string source = read_file(path, err);
  try {
    return std::make_shared<const ContractDef>(parse_contract(source));
  } catch (const ParseError& e) {
    err << path << ':' << e.span().line << ':' << e.span().column
        << ": error[PARSE]: expected " << e.expected() << ", found " << e.found() << '\n';
    throw Failure{kExitParseError};
  }
}

std::shared_ptr<const ContractDef> load_checked(const std::string& path, std::ostream& err) {
  auto def = parse_file(path, err);
  const CheckReport report = check_all(*def);
  if (report.has_errors()) {
    render(err, report, path);
    throw Failure{kExitCheckError};
  }
  return def;
}

template <typename F>
auto schema_guard(const std::string& what, std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    err << what << ": error: " << e.what() << '\n';
    throw Failure{kExitSchemaError};
  }
}

Store load_params(const std::string& contract_path, const std::string& params_path,
                  const ContractDef& def, std::ostream& err) {
  std::string path = params_path;
  if (path.empty()) {
    fs::path sibling = fs::path(contract_path);
    sibling.replace_extension(".params.json");
    if (fs::exists(sibling)) path = sibling.string();
  }
  if (path.empty()) return Store{};
  const Json j = load_json(path, err);
  return schema_guard(path, err, [&] { return params_from_json(j, def); });
}

Uint parse_uint_arg(const std::string& text, const char* flag, std::ostream& err) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    err << "error: " << flag << " expects a non-negative integer, got '" << text << "'\n";
    throw Failure{kExitSchemaError};
  }
  return Uint(text);
}

ContractInstance make_instance(std::shared_ptr<const ContractDef> def, const std::string& id,
                               const std::string& balance, const Store& params,
                               std::ostream& err) {
  try {
    return instantiate(std::move(def), Address{id}, parse_uint_arg(balance, "--balance", err),
                       params);
  } catch (const InstantiationError& e) {
    err << "error: " << e.what() << '\n';
    throw Failure{kExitSchemaError};
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchemaError;
  }
}

void print_verdict_text(const Verdict& v, std::ostream& out) {
  out << "property: " << v.property << '\n';
  out << "mode: " << v.mode << '\n';
  out << "bound: depth " << v.bound.depth;
  if (v.bound.depth2 != 0) out << " + " << v.bound.depth2;
  out << ", alphabet " << v.bound.alphabet_size << " elements";
  if (v.mode == "inductive") out << ", samples " << v.bound.samples << ", seed " << v.bound.seed;
  out << '\n';
  out << "verdict: " << verdict_kind(v) << '\n';
  if (const auto* h = std::get_if<Holds>(&v.result)) {
    out << "schedules_checked: " << h->schedules_checked << '\n';
    out << "premise_states: " << h->premise_states << '\n';
    out << "states_explored: " << h->states_explored << '\n';
  } else if (const auto* w = std::get_if<Violated>(&v.result)) {
    out << "detail: " << w->detail << '\n';
    out << "failing_index: " << w->failing_index << '\n';
    out << "witness (" << w->schedule.size() << " elements):\n";
    for (std::size_t i = 0; i < w->schedule.size(); ++i) {
      const auto& el = w->schedule[i];
      out << "  " << i << ": block " << el.bstate.block_num << "  " << el.msg << '\n';
    }
  } else {
    out << "reason: " << std::get<Inconclusive>(v.result).reason << '\n';
  }
}

}  // namespace

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto def = parse_file(o.contract, err);
    const CheckReport report = check_all(*def);
    if (o.format == Format::Json) {
      Json arr = Json::array();
      for (const auto& d : report.diagnostics) {
        arr.push_back(Json{{"severity", severity_name(d.severity)},
                           {"line", d.span.line},
                           {"column", d.span.column},
                           {"rule", d.rule_id},
                           {"message", d.message}});
      }
      out << dump_json(arr);
    } else {
      render(out, report, o.contract);
      if (report.empty()) out << o.contract << ": ok\n";
    }
    return report.has_errors() ? kExitCheckError : kExitOk;
  });
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto def = load_checked(o.contract, err);
    const Store params = load_params(o.contract, o.params, *def, err);
    const ContractInstance inst = make_instance(def, o.id, o.balance, params, err);
    const Json sj = load_json(o.schedule, err);
    const Schedule sc = schema_guard(o.schedule, err, [&] { return schedule_from_json(sj); });

    Trace trace;
    if (o.start.empty()) {
      trace = execute0(inst, sc);
    } else {
      const Json st = load_json(o.start, err);
      const CState start = schema_guard(o.start, err, [&] { return cstate_from_json(st, "state"); });
      trace = execute(inst, start, sc);
    }

    for (std::size_t i = 0; i < sc.size() && i < trace.size(); ++i) {
      for (const auto& lint : {overdraw_lint(trace[i], sc[i].msg),
                               absorbed_funds_note(trace[i], sc[i].msg)}) {
        if (lint)
          err << o.schedule << ":step " << i << ": " << severity_name(lint->severity) << '['
              << lint->rule_id << "]: " << lint->message << '\n';
      }
    }
    write_output(o.out, dump_json(trace_to_json(trace)), out, err);
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto def = load_checked(o.contract, err);
    const Store params = load_params(o.contract, o.params, *def, err);
    const ContractInstance inst = make_instance(def, o.id, o.balance, params, err);
    Alphabet a = canonical_alphabet();
    if (!o.alphabet.empty()) {
      const Json aj = load_json(o.alphabet, err);
      a = schema_guard(o.alphabet, err, [&] { return alphabet_from_json(aj); });
    }
    const Address backer{o.backer};
    const Uint amount = parse_uint_arg(o.amount, "--amount", err);
    const PredicateArgs args{{"b", Value(backer)}, {"d", Value(amount)}};

    if (o.prop.empty() == o.expr.empty()) {
      err << "error: give exactly one of --prop and --expr\n";
      return static_cast<int>(kExitUnknownPredicate);
    }

    std::optional<Verdict> verdict;
    try {
      if (o.prop == "donation_preserved") {
        const Predicate p = make_builtin("donated", args, inst);
        const Predicate q = make_builtin("donation_kept", args, inst);
        const Predicate r = o.guard.empty()
                                ? make_builtin("no_claims_from", args, inst)
                                : Predicate(o.guard, PredicateKind::Element, inst);
        verdict = check_since_as_long(inst, p, q, r, a, o.reach_depth, o.cont_depth);
      } else if (o.prop == "can_claim_back") {
        verdict = check_can_claim_back(inst, backer, amount, a, o.depth);
      } else {
        const Predicate I = o.expr.empty() ? make_builtin(o.prop, args, inst)
                                           : Predicate(o.expr, PredicateKind::State, inst);
        if (I.kind() != PredicateKind::State) {
          err << "error: '" << o.prop << "' is a " << predicate_kind_name(I.kind())
              << " predicate; safety needs a state predicate\n";
          return static_cast<int>(kExitUnknownPredicate);
        }
        if (o.inductive) {
          const std::uint64_t seed = o.seed ? *o.seed : default_seed();
          verdict = check_safe_inductive(inst, I, random_state_generator(inst, a), a, o.samples,
                                         seed);
        } else {
          verdict = check_safe(inst, I, a, o.depth, o.jobs);
        }
      }
    } catch (const UnknownPredicate& e) {
      err << "error: " << e.what() << '\n';
      return static_cast<int>(kExitUnknownPredicate);
    } catch (const PredicateTypeError& e) {
      err << "error: predicate: " << e.what() << '\n';
      return static_cast<int>(kExitUnknownPredicate);
    } catch (const ParseError& e) {
      err << "error: predicate:" << e.span().column << ": expected " << e.expected()
          << ", found " << e.found() << '\n';
      return static_cast<int>(kExitUnknownPredicate);
    }

    if (o.format == Format::Json) {
      out << dump_json(verdict_to_json(*verdict));
    } else {
      print_verdict_text(*verdict, out);
    }
    if (verdict->violated()) {
      if (!o.out.empty())
        write_output(o.out, dump_json(schedule_to_json(verdict->as_violated().schedule)), out,
                     err);
      return static_cast<int>(kExitViolated);
    }
    return static_cast<int>(verdict->holds() ? kExitOk : kExitInconclusive);
  });
}

int cmd_network(const NetworkOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json cfg = load_json(o.config, err);
    const fs::path base = fs::path(o.config).parent_path();
    NetworkState net;
    Message initial;
    std::size_t budget = 1000;
    schema_guard(o.config, err, [&] {
      const auto& contracts = cfg.at("contracts");
      if (!contracts.is_array()) throw SchemaError("contracts: expected an array");
      for (std::size_t i = 0; i < contracts.size(); ++i) {
        const Json& c = contracts[i];
        const std::string where = "contracts[" + std::to_string(i) + "]";
        if (!c.contains("address") || !c.contains("source"))
          throw SchemaError(where + ": needs \"address\" and \"source\"");
        const std::string source = (base / c["source"].get<std::string>()).string();
        auto def = load_checked(source, err);
        const Store params =
            c.contains("params") ? params_from_json(c["params"], *def) : Store{};
        const Uint bal = c.contains("balance") ? uint_from_json(c["balance"], where + ".balance")
                                               : Uint(0);
        try {
          net.deploy(instantiate(def, Address{c["address"].get<std::string>()}, bal, params));
        } catch (const InstantiationError& e) {
          throw SchemaError(where + ": " + e.what());
        }
      }
      if (cfg.contains("block_num")) net.block.block_num = uint_from_json(cfg["block_num"], "block_num");
      if (!cfg.contains("initial")) throw SchemaError("missing \"initial\" message");
      initial = message_from_json(cfg["initial"], "initial");
      if (cfg.contains("budget"))
        budget = uint_from_json(cfg["budget"], "budget").convert_to<std::size_t>();
      return 0;
    });
    if (o.budget) budget = *o.budget;

    NetworkResult res;
    try {
      res = run_network(net, initial, budget);
    } catch (const UnknownAddress& e) {
      err << o.config << ": error: " << e.what() << '\n';
      return static_cast<int>(kExitSchemaError);
    }
    for (const auto& d : res.diagnostics)
      err << o.config << ": " << severity_name(d.severity) << '[' << d.rule_id << "]: "
          << d.message << '\n';
    write_output(o.out, dump_json(network_result_to_json(res)), out, err);
    return static_cast<int>(res.status == NetworkStatus::Completed ? kExitOk
                                                                   : kExitBudgetExhausted);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parse, check, simulate and model-check Scilla contracts", "scilla-mc"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Parse and statically check a contract");
  check_cmd->add_option("contract", check.contract, "Contract source")->required();
  check_cmd->add_option("--format", check.format, "text or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a schedule and print the trace");
  sim_cmd->add_option("contract", sim.contract, "Contract source")->required();
  sim_cmd->add_option("--params", sim.params, "Parameter JSON");
  sim_cmd->add_option("--schedule", sim.schedule, "Schedule JSON")->required();
  sim_cmd->add_option("--out", sim.out, "Trace output file (default stdout)");
  sim_cmd->add_option("--start", sim.start, "Start from this state instead of the initial one");
  sim_cmd->add_option("--id", sim.id, "Contract address")->capture_default_str();
  sim_cmd->add_option("--balance", sim.balance, "Initial balance")->capture_default_str();

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check a property over bounded schedules");
  ver_cmd->add_option("contract", ver.contract, "Contract source")->required();
  ver_cmd->add_option("--params", ver.params, "Parameter JSON");
  auto* prop_opt = ver_cmd->add_option(
      "--prop", ver.prop,
      "balance_backed | donated | donation_preserved | can_claim_back");
  auto* expr_opt = ver_cmd->add_option("--expr", ver.expr, "State predicate expression");
  prop_opt->excludes(expr_opt);
  ver_cmd->add_option("--alphabet", ver.alphabet, "Alphabet JSON (default: built-in)");
  ver_cmd->add_option("--depth", ver.depth, "Schedule length bound")->capture_default_str();
  ver_cmd->add_flag("--inductive", ver.inductive, "Check the induction step on sampled states");
  ver_cmd->add_option("--samples", ver.samples, "Sampled states")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Random seed");
  ver_cmd->add_option("--backer", ver.backer, "Backer address")->capture_default_str();
  ver_cmd->add_option("--amount", ver.amount, "Donation amount")->capture_default_str();
  ver_cmd->add_option("--reach-depth", ver.reach_depth, "Prefix bound")->capture_default_str();
  ver_cmd->add_option("--cont-depth", ver.cont_depth, "Continuation bound")
      ->capture_default_str();
  ver_cmd->add_option("--guard", ver.guard, "Element predicate for continuations");
  ver_cmd->add_option("--out", ver.out, "Witness schedule output file");
  ver_cmd->add_option("--jobs", ver.jobs, "Worker threads (0 = all)")->capture_default_str();
  ver_cmd->add_option("--id", ver.id, "Contract address")->capture_default_str();
  ver_cmd->add_option("--balance", ver.balance, "Initial balance")->capture_default_str();
  ver_cmd->add_option("--format", ver.format, "text or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  NetworkOptions net;
  auto* net_cmd = app.add_subcommand("network", "Run several contracts with continuations");
  net_cmd->add_option("config", net.config, "Network JSON")->required();
  net_cmd->add_option("--budget", net.budget, "Step budget (overrides the config)");
  net_cmd->add_option("--out", net.out, "Result output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (check_cmd->parsed()) return cmd_check(check, out, err);
  if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
  if (ver_cmd->parsed()) return cmd_verify(ver, out, err);
  return cmd_network(net, out, err);
}

}  // namespace scilla::cli
