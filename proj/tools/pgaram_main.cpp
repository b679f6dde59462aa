// Command-line front end: assemble and classify programs, normalize them,
// extract their behaviour, compare programs, run them against a memory,
// and check that a program computes a function within cost bounds.
//
// Exit codes: 0 success / equivalent / all checks passed, 1 not equivalent
// or a check failed, 2 usage or parse error, 3 inconclusive (step limit).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgaram/classify.hpp"
#include "pgaram/engine.hpp"
#include "pgaram/errors.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNotEquivalent = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

pgaram::InstructionSequence load_program(const std::string& path) {
  try {
    return pgaram::parse_program_file(path);
  } catch (const pgaram::ParseError& e) {
    std::ostringstream msg;
    msg << path << ":";
    if (e.line() != 0) msg << e.line() << ":" << e.column() << ":";
    msg << " " << e.what();
    throw pgaram::ParseError(msg.str());
  }
}

std::vector<pgaram::BitString> parse_inputs(const std::string& text) {
  std::vector<pgaram::BitString> inputs;
  if (text.empty()) return inputs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    inputs.push_back(token == "e" ? pgaram::BitString()
                                  : pgaram::BitString::from_text(token));
    if (comma == std::string::npos) return inputs;
    start = comma + 1;
  }
}

int cmd_asm(const std::string& file) {
  const pgaram::InstructionSequence s = load_program(file);
  const pgaram::ProgramClass cls = pgaram::classify_program(s);
  std::cout << "canonical: " << pgaram::program_text(pgaram::canonicalize(s))
            << "\n"
            << "srram: " << yes_no(cls.is_srram) << "\n"
            << "standard: " << yes_no(cls.is_standard) << "\n"
            << "successor: " << yes_no(cls.is_successor) << "\n";
  return kOk;
}

int cmd_norm(const std::string& file, bool struct_normal) {
  pgaram::InstructionSequence s = load_program(file);
  s = struct_normal ? pgaram::jump_normalize(s) : pgaram::canonicalize(s);
  std::cout << pgaram::program_text(s) << "\n";
  return kOk;
}

int cmd_extract(const std::string& file, bool dot) {
  const pgaram::RegularThread t = pgaram::extract(load_program(file));
  std::cout << (dot ? pgaram::thread_dot(t) : pgaram::thread_text(t));
  return kOk;
}

int cmd_equiv(const std::string& file1, const std::string& file2,
              const std::string& mode) {
  const pgaram::InstructionSequence s1 = load_program(file1);
  const pgaram::InstructionSequence s2 = load_program(file2);
  bool equivalent;
  if (mode == "seq") {
    equivalent = pgaram::seq_equal(s1, s2);
  } else if (mode == "struct") {
    equivalent = pgaram::struct_equal(s1, s2);
  } else {
    equivalent = pgaram::behaviourally_equivalent(s1, s2);
  }
  std::cout << (equivalent ? "equivalent" : "not equivalent") << " (" << mode
            << ")\n";
  return equivalent ? kOk : kNotEquivalent;
}

json report_json(const pgaram::CostReport& report) {
  json j;
  j["outcome"] = std::string(pgaram::outcome_name(report.outcome));
  j["uniform_steps"] = report.uniform_steps;
  j["bit_cost"] = report.bit_cost_defined ? json(report.bit_cost.str())
                                          : json(nullptr);
  j["peak_space"] = report.peak_space.str();
  return j;
}

int cmd_run(const std::string& program_file,
            const std::optional<std::string>& memory_file,
            const std::optional<std::string>& inputs_text,
            std::uint64_t max_steps, const std::string& measure, bool trace,
            bool as_json) {
  const pgaram::InstructionSequence program = load_program(program_file);
  pgaram::MemoryState initial;
  if (memory_file) initial = pgaram::load_memory_file(*memory_file);
  std::vector<pgaram::BitString> inputs;
  if (inputs_text) inputs = parse_inputs(*inputs_text);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    initial = initial.write(i + 1, inputs[i]);

  pgaram::RunOptions options;
  options.record_trace = trace;
  options.input_registers = inputs.size();
  const pgaram::RunOutput out =
      pgaram::run(program, initial, pgaram::RunLimits(max_steps), options);
  const std::string measured_cost =
      measure == "bit"
          ? (out.report.bit_cost_defined ? out.report.bit_cost.str()
                                         : "undefined")
          : std::to_string(out.report.uniform_steps);

  if (as_json) {
    json j = report_json(out.report);
    j["measure"] = measure == "bit" ? "bit" : "uniform";
    j["measured_cost"] =
        measured_cost == "undefined" ? json(nullptr) : json(measured_cost);
    j["inputs_preserved"] = out.inputs_preserved;
    if (out.memory.is_operative()) {
      json mem = json::object();
      for (const auto& [index, bits] : out.memory.state().registers())
        mem[index.str()] = bits.text();
      j["memory"] = mem;
    } else {
      j["memory"] = nullptr;
    }
    if (trace) {
      json steps = json::array();
      for (const auto& config : out.trace) {
        json step;
        step["node"] = config.node;
        json mem = json::object();
        for (const auto& [index, bits] : config.memory.registers())
          mem[index.str()] = bits.text();
        step["memory"] = mem;
        steps.push_back(std::move(step));
      }
      j["trace"] = std::move(steps);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# memory\n";
    if (out.memory.is_operative()) {
      pgaram::save_memory(std::cout, out.memory.state());
    } else {
      std::cout << "# inoperative\n";
    }
    if (trace) {
      std::cout << "# trace\n";
      for (std::size_t i = 0; i < out.trace.size(); ++i) {
        std::cout << "# step " << i << " node " << out.trace[i].node << ":";
        for (const auto& [index, bits] : out.trace[i].memory.registers())
          std::cout << " " << index.str() << "=" << bits.text();
        std::cout << "\n";
      }
    }
    std::cout << "# report\n"
              << "outcome=" << pgaram::outcome_name(out.report.outcome) << "\n"
              << "uniform_steps=" << out.report.uniform_steps << "\n"
              << "bit_cost="
              << (out.report.bit_cost_defined ? out.report.bit_cost.str()
                                              : "undefined")
              << "\n"
              << "peak_space=" << out.report.peak_space.str() << "\n"
              << "measured_cost=" << measured_cost << "\n"
              << "inputs_preserved=" << yes_no(out.inputs_preserved) << "\n";
  }
  return out.report.outcome == pgaram::RunOutcome::StepLimit ? kInconclusive
                                                             : kOk;
}

int cmd_check(const std::string& program_file, const std::string& cases_file,
              std::uint64_t max_steps, const std::string& measure) {
  const pgaram::InstructionSequence program = load_program(program_file);
  const pgaram::CheckSpec spec = pgaram::parse_check_spec_file(cases_file);
  const pgaram::CheckReport report = pgaram::check_computes(
      program, spec.cases, spec.time_bound, spec.space_bound,
      measure == "bit" ? pgaram::Measure::BitOriented
                       : pgaram::Measure::Uniform,
      pgaram::RunLimits(max_steps));
  for (std::size_t i = 0; i < report.cases.size(); ++i) {
    const pgaram::CaseResult& c = report.cases[i];
    std::cout << "case " << (i + 1) << ": " << pgaram::verdict_name(c.verdict)
              << " (" << c.detail << ")\n";
  }
  std::cout << "overall: " << pgaram::verdict_name(report.overall) << "\n";
  switch (report.overall) {
    case pgaram::CaseVerdict::Pass: return kOk;
    case pgaram::CaseVerdict::Fail: return kNotEquivalent;
    case pgaram::CaseVerdict::Inconclusive: return kInconclusive;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instruction-sequence toolkit for register machines over "
               "bit-string memories"};
  app.require_subcommand(1);

  std::string file, file2, mode = "behav", measure = "uniform";
  std::optional<std::string> memory_file, inputs_text;
  std::string cases_file;
  std::uint64_t max_steps = 100000;
  bool flag_struct = false, flag_dot = false, flag_trace = false,
       flag_json = false;

  CLI::App* asm_cmd = app.add_subcommand(
      "asm", "Parse a program, classify it and print its canonical text");
  asm_cmd->add_option("file", file, "program file")->required();

  CLI::App* norm_cmd =
      app.add_subcommand("norm", "Print the canonical form of a program");
  norm_cmd->add_option("file", file, "program file")->required();
  norm_cmd->add_flag("--struct", flag_struct,
                     "also normalize jumps (chain collapse and shortening)");

  CLI::App* extract_cmd = app.add_subcommand(
      "extract", "Print the thread a program produces under execution");
  extract_cmd->add_option("file", file, "program file")->required();
  extract_cmd->add_flag("--dot", flag_dot, "emit a DOT digraph");

  CLI::App* equiv_cmd =
      app.add_subcommand("equiv", "Compare two programs for equivalence");
  equiv_cmd->add_option("file1", file, "first program")->required();
  equiv_cmd->add_option("file2", file2, "second program")->required();
  bool mode_seq = false, mode_struct = false, mode_behav = false;
  equiv_cmd->add_flag("--seq", mode_seq, "same instruction sequence");
  equiv_cmd->add_flag("--struct", mode_struct,
                      "same sequence after jump normalization");
  equiv_cmd->add_flag("--behav", mode_behav,
                      "same behaviour under execution (default)");

  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a program against a memory");
  run_cmd->add_option("--program", file, "program file")->required();
  run_cmd->add_option("--memory", memory_file, "initial memory file");
  run_cmd->add_option("--inputs", inputs_text,
                      "comma-separated input words for registers 1..n "
                      "('e' for the empty word)");
  run_cmd->add_option("--max-steps", max_steps, "basic-action budget");
  run_cmd->add_option("--measure", measure, "uniform|bit")
      ->check(CLI::IsMember({"uniform", "bit"}));
  run_cmd->add_flag("--trace", flag_trace, "record every configuration");
  run_cmd->add_flag("--json", flag_json, "machine-readable output");

  CLI::App* check_cmd = app.add_subcommand(
      "check", "Check that a program computes a function within bounds");
  check_cmd->add_option("--program", file, "program file")->required();
  check_cmd->add_option("--cases", cases_file, "check-spec file")->required();
  check_cmd->add_option("--max-steps", max_steps, "basic-action budget");
  check_cmd->add_option("--measure", measure, "uniform|bit")
      ->check(CLI::IsMember({"uniform", "bit"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kUsage;
  }

  try {
    if (asm_cmd->parsed()) return cmd_asm(file);
    if (norm_cmd->parsed()) return cmd_norm(file, flag_struct);
    if (extract_cmd->parsed()) return cmd_extract(file, flag_dot);
    if (equiv_cmd->parsed()) {
      if (mode_seq) mode = "seq";
      if (mode_struct) mode = "struct";
      if (mode_behav) mode = "behav";
      if (mode_seq + mode_struct + mode_behav > 1) {
        std::cerr << "pick at most one of --seq, --struct, --behav\n";
        return kUsage;
      }
      return cmd_equiv(file, file2, mode);
    }
    if (run_cmd->parsed())
      return cmd_run(file, memory_file, inputs_text, max_steps, measure,
                     flag_trace, flag_json);
    if (check_cmd->parsed())
      return cmd_check(file, cases_file, max_steps, measure);
  } catch (const pgaram::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
