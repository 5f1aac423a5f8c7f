#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "dorm/pipeline.hpp"
#include "json.hpp"

namespace dorm {

using Json = nlohmann::ordered_json;

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = in.gcount();
    if (got > 0) crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(got));
  }
  char hex[24];
  std::snprintf(hex, sizeof hex, "crc32:%08lx", static_cast<unsigned long>(crc));
  return hex;
}

std::string Provenance::comment_line() const {
  std::string line = "# tool=" + std::string(kToolVersion) + " config=" + config_hash;
  for (const auto& [name, sum] : inputs) line += " " + name + "=" + sum;
  return line;
}

std::string Provenance::json() const {
  Json doc;
  doc["tool"] = kToolVersion;
  doc["config_hash"] = config_hash;
  Json in = Json::object();
  for (const auto& [name, sum] : inputs) in[name] = sum;
  doc["inputs"] = in;
  return doc.dump();
}

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string optional_csv(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

void write_sb_jsonl(std::ostream& out, const CorpusIndex& index, std::span<const SleepingBeautyRecord> sbs,
                    const Provenance& provenance) {
  out << "{\"provenance\":" << provenance.json() << "}\n";
  for (const auto& sb : sbs) {
    Json rec;
    rec["id"] = index.id(sb.paper);
    rec["b"] = sb.beauty.b;
    rec["t_m"] = sb.beauty.t_m;
    rec["t_a"] = sb.beauty.t_a;
    rec["awakening_year"] = sb.beauty.awakening_year;
    rec["corrected_percentile"] = sb.corrected_percentile;
    out << rec.dump() << '\n';
  }
}

void write_triads_jsonl(std::ostream& out, const CorpusIndex& index, std::span<const TriadRecord> triads,
                        const Provenance& provenance) {
  out << "{\"provenance\":" << provenance.json() << "}\n";
  for (const auto& t : triads) {
    Json rec;
    rec["sb_id"] = index.id(t.sb);
    rec["awakening_year"] = t.awakening_year;
    rec["pr_id"] = t.has_prince() ? Json(index.id(*t.prince.prince)) : Json(nullptr);
    rec["absence_reason"] = to_string(t.prince.absence);
    rec["y_pr"] = t.prince.y_pr ? Json(*t.prince.y_pr) : Json(nullptr);
    rec["co_citation_count"] = t.prince.co_citation_count;
    Json st = Json::array();
    for (PaperIdx p : t.storytellers) st.push_back(index.id(p));
    rec["storytellers"] = st;
    rec["c_sb_window"] = t.c_sb_window;
    rec["c_pr_window"] = t.c_pr_window;
    out << rec.dump() << '\n';
  }
}

std::vector<TriadRecord> read_triads_jsonl(std::istream& in, const CorpusIndex& index) {
  std::vector<TriadRecord> triads;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto rec = Json::parse(line);
      if (rec.contains("provenance")) continue;
      TriadRecord t;
      t.sb = index.require(rec.at("sb_id").get<std::string>());
      t.awakening_year = rec.at("awakening_year").get<int>();
      t.prince.sb = t.sb;
      auto reason = parse_prince_absence(rec.at("absence_reason").get<std::string>());
      if (!reason) throw Error(Errc::CorruptFile, "unknown absence_reason");
      t.prince.absence = *reason;
      if (!rec.at("pr_id").is_null()) {
        t.prince.prince = index.require(rec.at("pr_id").get<std::string>());
        t.prince.y_pr = rec.at("y_pr").get<int>();
      }
      t.prince.co_citation_count = rec.at("co_citation_count").get<std::uint32_t>();
      for (const auto& id : rec.at("storytellers")) t.storytellers.push_back(index.require(id.get<std::string>()));
      t.c_sb_window = rec.at("c_sb_window").get<std::uint32_t>();
      t.c_pr_window = rec.at("c_pr_window").get<std::uint32_t>();
      triads.push_back(std::move(t));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::CorruptFile, "triads line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return triads;
}

void write_ratios_csv(std::ostream& out, const CorpusIndex& index, std::span<const RatioSample> samples,
                      const Provenance& provenance) {
  out << provenance.comment_line() << "\nsb_id,st_over_csb,st_over_cpr,n_st\n";
  for (const auto& s : samples) {
    out << index.id(s.sb) << ',' << optional_csv(s.st_over_csb) << ',' << optional_csv(s.st_over_cpr) << ','
        << s.n_st << '\n';
  }
}

void write_kde_csv(std::ostream& out, std::span<const std::pair<double, double>> grid, const Provenance& provenance) {
  out << provenance.comment_line() << "\nx,density\n";
  for (auto [x, density] : grid) out << format_real(x) << ',' << format_real(density) << '\n';
}

void write_pmf_csv(std::ostream& out, const std::map<std::uint32_t, double>& pmf, const Provenance& provenance) {
  out << provenance.comment_line() << "\nn_st,probability\n";
  for (auto [n, p] : pmf) out << n << ',' << format_real(p) << '\n';
}

void write_propagation_json(std::ostream& out, const PropagationTable& table, const PropagationOptions& options,
                            const Provenance& provenance) {
  Json doc;
  doc["provenance"] = Json::parse(provenance.json());
  doc["aggregation"] = options.aggregation == Aggregation::Macro ? "macro" : "pooled";
  doc["e_nsb_variant"] = options.nsb == NsbVariant::Conjunctive ? "conjunctive" : "followers";
  doc["min_csb"] = options.filter.min_csb;
  doc["min_cpr"] = options.filter.min_cpr;
  Json rows = Json::array();
  for (const auto& row : table) {
    Json r;
    r["group"] = to_string(row.group);
    r["e_sb"] = optional_json(row.e_sb);
    r["e_pr"] = optional_json(row.e_pr);
    r["e_nsb"] = optional_json(row.e_nsb);
    r["n_triads"] = row.n_triads;
    r["n_triads_nsb"] = row.n_triads_nsb;
    rows.push_back(r);
  }
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

std::vector<HistoryRow> case_history(const CorpusIndex& index, const TriadRecord& triad, int horizon_year) {
  const int start = index.year(triad.sb);
  std::vector<HistoryRow> rows;
  if (horizon_year < start) return rows;
  for (int y = start; y <= horizon_year; ++y) {
    HistoryRow row;
    row.year = y;
    row.sb_citations = static_cast<std::uint32_t>(index.citers_in(triad.sb, YearWindow(y, y)).size());
    row.is_awakening_year = y == triad.awakening_year;
    if (triad.has_prince()) {
      row.pr_citations = static_cast<std::uint32_t>(index.citers_in(*triad.prince.prince, YearWindow(y, y)).size());
      row.st_count = static_cast<std::uint32_t>(std::count_if(
          triad.storytellers.begin(), triad.storytellers.end(), [&](PaperIdx p) { return index.year(p) == y; }));
      row.is_y_pr = y == *triad.prince.y_pr;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_history_csv(std::ostream& out, std::span<const HistoryRow> rows, const Provenance& provenance) {
  out << provenance.comment_line() << "\nyear,sb_citations,pr_citations,st_count,is_y_pr,is_awakening_year\n";
  for (const auto& r : rows) {
    out << r.year << ',' << r.sb_citations << ',' << (r.pr_citations ? std::to_string(*r.pr_citations) : "")
        << ',' << (r.st_count ? std::to_string(*r.st_count) : "") << ',' << (r.is_y_pr ? 1 : 0) << ','
        << (r.is_awakening_year ? 1 : 0) << '\n';
  }
}

}  // namespace dorm
