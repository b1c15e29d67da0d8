#include "topotype/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "topotype/counting.hpp"
#include "topotype/errors.hpp"
#include "topotype/oracle.hpp"
#include "topotype/polyfit.hpp"
#include "topotype/report_io.hpp"

namespace topotype {

namespace {

struct RunConfig {
  long p = 0;
  std::string primes;
  int k = 2;
  std::string R;
  std::string partition;
  std::string format = "plain";
  std::string guard_steps;
  std::string guard_multisets;
  std::string reps_file;
  unsigned workers = 0;
  bool verbose = false;
};

std::vector<long> parse_list(const std::string& text, const char* what) {
  std::vector<long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " value '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

// "3..6", "3,4,6" or "5".
std::vector<int> parse_range(const std::string& text) {
  if (auto dots = text.find(".."); dots != std::string::npos) {
    long lo = parse_list(text.substr(0, dots), "R").at(0);
    long hi = parse_list(text.substr(dots + 2), "R").at(0);
    if (hi < lo) throw std::invalid_argument("empty R range '" + text + "'");
    std::vector<int> out;
    for (long r = lo; r <= hi; ++r) out.push_back(static_cast<int>(r));
    return out;
  }
  std::vector<int> out;
  for (long r : parse_list(text, "R")) out.push_back(static_cast<int>(r));
  return out;
}

void require_prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
}

FeasibilityGuard guard_from(const RunConfig& config) {
  FeasibilityGuard guard = FeasibilityGuard::from_env();
  auto set = [](BigInt& field, const std::string& text, const char* flag) {
    if (text.empty()) return;
    if (field.set_str(text, 10) != 0 || field <= 0)
      throw std::invalid_argument(std::string(flag) + " must be a positive integer");
  };
  set(guard.max_steps, config.guard_steps, "--guard-steps");
  set(guard.max_multisets, config.guard_multisets, "--guard-multisets");
  return guard;
}

int cmd_count(const RunConfig& config, std::ostream& out) {
  require_prime(config.p);
  const auto format = parse_output_format(config.format);
  std::optional<PartitionType> partition;
  if (!config.partition.empty()) partition = PartitionType::parse(config.partition);
  std::optional<int> R;
  if (!config.R.empty()) R = static_cast<int>(parse_list(config.R, "R").at(0));
  if (!partition && !R) throw std::invalid_argument("count needs --partition or --R");
  if (partition && R && partition->total() != *R)
    throw std::invalid_argument("partition " + partition->to_string() + " does not sum to R = " + std::to_string(*R));

  if (config.k == 1) {
    if (partition) {
      if (auto violation = admissibility_violation(config.p, 1, *partition)) throw AdmissibilityError(*violation);
      R = partition->total();
    }
    out << render_count_report(count_types_rank1(*R, config.p), format);
    return kExitOk;
  }
  if (config.k != 2) throw std::invalid_argument("counting is available for k = 1 and k = 2 only");
  if (partition) {
    ActionParams{config.p, 2, partition->total()}.validate();
    out << render_count_report(count_types_rank2(*partition, config.p), format);
  } else {
    out << render_total_report(total_types(config.p, 2, *R), format);
  }
  return kExitOk;
}

int cmd_total(const RunConfig& config, std::ostream& out) {
  require_prime(config.p);
  if (config.R.empty()) throw std::invalid_argument("total needs --R");
  const int R = static_cast<int>(parse_list(config.R, "R").at(0));
  out << render_total_report(total_types(config.p, config.k, R), parse_output_format(config.format));
  return kExitOk;
}

struct VerifyCase {
  long p;
  int k;
  int R;
  std::string subject;  // partition or "total"
  std::string oracle;
  std::string formula;
  std::string status;   // PASS, FAIL, SKIPPED
  std::string reason;
};

std::vector<VerifyCase> verify_one(long p, int k, int R, const FeasibilityGuard& guard, unsigned workers) {
  std::vector<VerifyCase> cases;
  auto add = [&](std::string subject, const BigInt& oracle, const BigInt& formula, std::string reason = {}) {
    cases.push_back({p, k, R, std::move(subject), oracle.get_str(), formula.get_str(),
                     oracle == formula && reason.empty() ? "PASS" : "FAIL", std::move(reason)});
  };

  if (k == 1) {
    add("total", rank1_orbit_count(p, R, guard), count_types_rank1(R, p).T);
    return cases;
  }
  if (k != 2) throw std::invalid_argument("verify supports k = 1 and k = 2");

  OrbitOptions options;
  options.guard = guard;
  options.workers = workers;
  const OrbitTable table = count_orbits(p, 2, R, options);

  std::set<PartitionType> subjects;
  for (const auto& partition : admissible_partitions(p, 2, R)) subjects.insert(partition);
  for (const auto& [partition, count] : table.by_partition) subjects.insert(partition);

  BigInt formula_total = 0;
  for (const auto& partition : subjects) {
    auto it = table.by_partition.find(partition);
    const BigInt oracle = it == table.by_partition.end() ? BigInt(0) : it->second;
    if (auto violation = admissibility_violation(p, 2, partition)) {
      add(partition.to_string(), oracle, 0, "oracle found orbits for an inadmissible partition: " + *violation);
      continue;
    }
    const BigInt formula = count_types_rank2(partition, p).T;
    formula_total += formula;
    add(partition.to_string(), oracle, formula);
  }
  if (p == 2) formula_total = count_types_klein(R);
  add("total", table.total, formula_total);
  return cases;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  if (config.primes.empty()) throw std::invalid_argument("verify needs --p");
  if (config.R.empty()) throw std::invalid_argument("verify needs --R");
  const auto primes = parse_list(config.primes, "p");
  for (long p : primes) require_prime(p);
  const auto Rs = parse_range(config.R);
  const auto format = parse_output_format(config.format);
  const FeasibilityGuard guard = guard_from(config);

  std::vector<VerifyCase> cases;
  for (long p : primes) {
    for (int R : Rs) {
      try {
        auto found = verify_one(p, config.k, R, guard, config.workers);
        cases.insert(cases.end(), found.begin(), found.end());
      } catch (const GuardExceeded& e) {
        cases.push_back({p, config.k, R, "total", "", "", "SKIPPED", e.what()});
      }
    }
  }

  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : cases) {
    if (c.status == "PASS") ++passed;
    else if (c.status == "FAIL") ++failed;
    else ++skipped;
  }

  switch (format) {
    case OutputFormat::kJson: {
      auto records = nlohmann::ordered_json::array();
      for (const auto& c : cases) {
        nlohmann::ordered_json r;
        r["p"] = std::to_string(c.p);
        r["k"] = std::to_string(c.k);
        r["R"] = std::to_string(c.R);
        r["subject"] = c.subject;
        r["oracle"] = c.oracle;
        r["formula"] = c.formula;
        r["status"] = c.status;
        r["reason"] = c.reason;
        records.push_back(r);
      }
      nlohmann::ordered_json doc;
      doc["cases"] = records;
      doc["passed"] = std::to_string(passed);
      doc["failed"] = std::to_string(failed);
      doc["skipped"] = std::to_string(skipped);
      out << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::kCsv:
      out << "status,p,k,R,subject,oracle,formula,reason\n";
      for (const auto& c : cases)
        out << c.status << ',' << c.p << ',' << c.k << ',' << c.R << ",\"" << c.subject << "\"," << c.oracle << ','
            << c.formula << ",\"" << c.reason << "\"\n";
      break;
    case OutputFormat::kPlain:
      for (const auto& c : cases) {
        out << std::left << std::setw(8) << c.status << "p=" << c.p << " k=" << c.k << " R=" << c.R << " "
            << c.subject;
        if (c.status != "SKIPPED") out << " oracle=" << c.oracle << " formula=" << c.formula;
        if (!c.reason.empty()) out << " (" << c.reason << ")";
        out << "\n";
      }
      out << "summary: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
      break;
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_table(const RunConfig& config, std::ostream& out) {
  if (config.R.empty()) throw std::invalid_argument("table needs --R");
  const int R = static_cast<int>(parse_list(config.R, "R").at(0));
  const auto primes = parse_list(config.primes.empty() ? "5,7,11,13,17,19" : config.primes, "prime");
  TableFormat format = TableFormat::kPlain;
  switch (parse_output_format(config.format)) {
    case OutputFormat::kJson: format = TableFormat::kJson; break;
    case OutputFormat::kCsv: format = TableFormat::kCsv; break;
    case OutputFormat::kPlain: break;
  }
  out << render_table(R, primes, format);
  return kExitOk;
}

int cmd_orbits(const RunConfig& config, std::ostream& out) {
  require_prime(config.p);
  if (config.R.empty()) throw std::invalid_argument("orbits needs --R");
  const int R = static_cast<int>(parse_list(config.R, "R").at(0));
  OrbitOptions options;
  options.guard = guard_from(config);
  options.workers = config.workers;
  options.keep_representatives = !config.reps_file.empty();
  const OrbitTable table = count_orbits(config.p, config.k, R, options);

  if (parse_output_format(config.format) == OutputFormat::kJson) {
    nlohmann::ordered_json doc;
    doc["p"] = std::to_string(config.p);
    doc["k"] = std::to_string(config.k);
    doc["R"] = std::to_string(R);
    doc["generating_sets"] = table.generating_sets.get_str();
    nlohmann::ordered_json by;
    for (const auto& [partition, count] : table.by_partition) by[partition.to_string()] = count.get_str();
    doc["orbits"] = by;
    doc["total"] = table.total.get_str();
    out << doc.dump(2) << "\n";
  } else {
    out << "generating sets " << table.generating_sets.get_str() << "\n";
    for (const auto& [partition, count] : table.by_partition)
      out << std::left << std::setw(16) << partition.to_string() << count.get_str() << "\n";
    out << std::left << std::setw(16) << "total" << table.total.get_str() << "\n";
  }
  if (!config.reps_file.empty()) {
    std::ofstream file(config.reps_file);
    if (!file) throw std::runtime_error("cannot write " + config.reps_file);
    write_representatives(file, table);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Count topological types of fully ramified Z_p^k actions on surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", config.format, "Output format: plain, json or csv")->capture_default_str();
  app.add_flag("-v,--verbose", config.verbose, "Verbose diagnostics");

  auto* count = app.add_subcommand("count", "Topological types for one partition type, or all types for R");
  count->add_option("--p", config.p, "Prime p")->required();
  count->add_option("--k", config.k, "Rank (1 or 2)")->capture_default_str();
  count->add_option("--partition", config.partition, "Parts, e.g. 2,2,1 or 1^4");
  count->add_option("--R", config.R, "Number of branch points");

  auto* total = app.add_subcommand("total", "Per-partition breakdown and total for R branch points");
  total->add_option("--p", config.p, "Prime p")->required();
  total->add_option("--k", config.k, "Rank (1 or 2)")->capture_default_str();
  total->add_option("--R", config.R, "Number of branch points")->required();

  auto* verify = app.add_subcommand("verify", "Compare closed-form counts against brute-force orbit enumeration");
  verify->add_option("--p", config.primes, "Comma-separated primes")->required();
  verify->add_option("--k", config.k, "Rank (1 or 2)")->capture_default_str();
  verify->add_option("--R", config.R, "R, R list or range lo..hi")->required();

  auto* table = app.add_subcommand("table", "Counts per partition as polynomials in p");
  table->add_option("--R", config.R, "Number of branch points")->required();
  table->add_option("--primes", config.primes, "Comma-separated primes to sample (default 5,7,11,13,17,19)");

  auto* orbits = app.add_subcommand("orbits", "Brute-force orbit table for (p, k, R)");
  orbits->add_option("--p", config.p, "Prime p")->required();
  orbits->add_option("--k", config.k, "Rank")->capture_default_str();
  orbits->add_option("--R", config.R, "Number of branch points")->required();
  orbits->add_option("--reps", config.reps_file, "Write orbit representatives to this file");

  for (auto* sub : {verify, orbits}) {
    sub->add_option("--guard-steps", config.guard_steps, "Override the canonicalization step guard");
    sub->add_option("--guard-multisets", config.guard_multisets, "Override the multiset count guard");
    sub->add_option("--workers", config.workers, "Worker threads (0 = all cores)");
  }

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("topotype");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count) return cmd_count(config, out);
    if (*total) return cmd_total(config, out);
    if (*verify) return cmd_verify(config, out);
    if (*table) return cmd_table(config, out);
    if (*orbits) return cmd_orbits(config, out);
  } catch (const AdmissibilityError& e) {
    err << "error: inadmissible partition: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    err << "error: refused by feasibility guard: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace topotype
