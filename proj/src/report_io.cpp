#include "topotype/report_io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace topotype {

namespace {

using Json = nlohmann::ordered_json;

Json count_to_json(const CountReport& r) {
  Json j;
  j["partition"] = r.partition.to_string();
  j["p"] = std::to_string(r.p);
  j["k"] = std::to_string(r.k);
  j["R"] = std::to_string(r.partition.total());
  j["genus"] = genus_text(r.p, r.k, r.partition.total());
  j["card_A"] = r.card_A.get_str();
  auto terms = Json::array();
  for (const auto& t : r.burnside_terms)
    terms.push_back(Json{{"divisor", std::to_string(t.divisor)}, {"contribution", t.contribution.get_str()}});
  j["burnside_terms"] = terms;
  j["marking_multiplier"] = r.marking_multiplier.get_str();
  j["T"] = r.T.get_str();
  j["oracle_validated_only"] = r.oracle_validated_only;
  return j;
}

BigInt big(const Json& j, const char* key) {
  BigInt v;
  const std::string s = j.at(key).get<std::string>();
  if (v.set_str(s, 10) != 0) throw std::invalid_argument(std::string("report: field '") + key + "' is not an integer");
  return v;
}

CountReport count_from_json(const Json& j) {
  CountReport r;
  r.partition = PartitionType::parse(j.at("partition").get<std::string>());
  r.p = big(j, "p").get_si();
  r.k = static_cast<int>(big(j, "k").get_si());
  r.card_A = big(j, "card_A");
  for (const auto& t : j.at("burnside_terms")) r.burnside_terms.push_back({big(t, "divisor").get_si(), big(t, "contribution")});
  r.marking_multiplier = big(j, "marking_multiplier");
  r.T = big(j, "T");
  r.oracle_validated_only = j.at("oracle_validated_only").get<bool>();
  return r;
}

std::string burnside_summary(const CountReport& r) {
  std::string out;
  for (const auto& t : r.burnside_terms) {
    if (!out.empty()) out += ';';
    out += std::to_string(t.divisor) + ":" + t.contribution.get_str();
  }
  return out;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "plain") return OutputFormat::kPlain;
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  throw std::invalid_argument("unknown output format '" + name + "' (expected plain, json or csv)");
}

std::string genus_text(long p, int k, int R) {
  try {
    return genus_of(ActionParams{p, k, R}).get_str();
  } catch (const std::domain_error&) {
    return "n/a";
  }
}

std::string render_count_report(const CountReport& r, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::kJson:
      out << count_to_json(r).dump(2) << "\n";
      break;
    case OutputFormat::kCsv:
      out << "partition,p,k,R,genus,card_A,burnside,marking,T\n";
      out << '"' << r.partition.to_string() << "\"," << r.p << ',' << r.k << ',' << r.partition.total() << ','
          << genus_text(r.p, r.k, r.partition.total()) << ',' << r.card_A.get_str() << ',' << burnside_summary(r)
          << ',' << r.marking_multiplier.get_str() << ',' << r.T.get_str() << "\n";
      break;
    case OutputFormat::kPlain: {
      auto line = [&](const std::string& key, const std::string& value) {
        out << std::left << std::setw(20) << key << value << "\n";
      };
      line("partition", r.partition.to_string());
      line("p", std::to_string(r.p));
      line("k", std::to_string(r.k));
      line("R", std::to_string(r.partition.total()));
      line("genus", genus_text(r.p, r.k, r.partition.total()));
      line("|A|", r.card_A.get_str());
      if (r.burnside_terms.empty()) line("burnside", "(none)");
      for (const auto& t : r.burnside_terms)
        line("burnside d'=" + std::to_string(t.divisor), t.contribution.get_str());
      line("marking", r.marking_multiplier.get_str());
      line("T", r.T.get_str());
      if (r.oracle_validated_only) out << "note: p = 3 results are validated by the brute-force oracle only\n";
      break;
    }
  }
  return out.str();
}

std::string render_total_report(const TotalReport& t, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::kJson: {
      Json j;
      j["p"] = std::to_string(t.p);
      j["k"] = std::to_string(t.k);
      j["R"] = std::to_string(t.R);
      j["genus"] = genus_text(t.p, t.k, t.R);
      j["total"] = t.total.get_str();
      auto rows = Json::array();
      for (const auto& r : t.rows) rows.push_back(count_to_json(r));
      j["rows"] = rows;
      out << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::kCsv:
      out << "partition,p,k,R,card_A,burnside,marking,T\n";
      for (const auto& r : t.rows)
        out << '"' << r.partition.to_string() << "\"," << r.p << ',' << r.k << ',' << t.R << ','
            << r.card_A.get_str() << ',' << burnside_summary(r) << ',' << r.marking_multiplier.get_str() << ','
            << r.T.get_str() << "\n";
      out << "total," << t.p << ',' << t.k << ',' << t.R << ",,,," << t.total.get_str() << "\n";
      break;
    case OutputFormat::kPlain: {
      out << "p = " << t.p << ", k = " << t.k << ", R = " << t.R << ", genus = " << genus_text(t.p, t.k, t.R)
          << "\n";
      out << std::left << std::setw(16) << "partition" << std::right << std::setw(14) << "|A|" << std::setw(14)
          << "burnside" << std::setw(10) << "marking" << std::setw(14) << "T" << "\n";
      for (const auto& r : t.rows) {
        BigInt correction = 0;
        for (const auto& term : r.burnside_terms) correction += term.contribution;
        out << std::left << std::setw(16) << r.partition.to_string() << std::right << std::setw(14)
            << r.card_A.get_str() << std::setw(14) << correction.get_str() << std::setw(10)
            << r.marking_multiplier.get_str() << std::setw(14) << r.T.get_str() << "\n";
      }
      out << std::left << std::setw(16) << "total" << std::right << std::setw(52) << t.total.get_str() << "\n";
      if (t.p == 3 && t.k == 2) out << "note: p = 3 results are validated by the brute-force oracle only\n";
      break;
    }
  }
  return out.str();
}

CountReport parse_count_report_json(const std::string& text) { return count_from_json(Json::parse(text)); }

TotalReport parse_total_report_json(const std::string& text) {
  const Json j = Json::parse(text);
  TotalReport t;
  t.p = big(j, "p").get_si();
  t.k = static_cast<int>(big(j, "k").get_si());
  t.R = static_cast<int>(big(j, "R").get_si());
  t.total = big(j, "total");
  for (const auto& row : j.at("rows")) t.rows.push_back(count_from_json(row));
  return t;
}

}  // namespace topotype
