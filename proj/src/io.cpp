#include "smallball/io.hpp"

#include <charconv>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "smallball/errors.hpp"

namespace smallball {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const nlohmann::json& params) {
  // nlohmann objects iterate in key order, so dump() is canonical.
  const std::uint64_t h = fnv1a64(params.dump());
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[15 - i] = hex[(h >> (4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string(buf, 16);
}

std::string default_output_dir() {
  const char* env = std::getenv("SMALLBALL_OUTPUT_DIR");
  return (env && *env) ? std::string(env) : std::string(".");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("read failed: " + path);
  return content;
}

std::string path_csv(const std::vector<double>& t, const std::vector<double>& values) {
  if (t.size() != values.size())
    throw std::invalid_argument("path_csv: times and values must have equal length");
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += format_double(t[i]);
    out += ',';
    out += format_double(values[i]);
    out += '\n';
  }
  return out;
}

namespace {

double parse_field(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::invalid_argument("malformed CSV number at line " + std::to_string(line_no));
  return v;
}

}  // namespace

void parse_path_csv(const std::string& content, std::vector<double>& t,
                    std::vector<double>& values) {
  t.clear();
  values.clear();
  std::size_t pos = 0, line_no = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    std::string_view line(content.data() + pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = eol + 1;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "t,value")
        throw std::invalid_argument("malformed CSV: expected header 't,value'");
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("malformed CSV row at line " + std::to_string(line_no));
    t.push_back(parse_field(line.substr(0, comma), line_no));
    values.push_back(parse_field(line.substr(comma + 1), line_no));
  }
  if (t.empty()) throw std::invalid_argument("malformed CSV: no data rows");
}

std::string table_csv(const SmallBallEstimate& est) {
  std::string out = "epsilon,hits,p_hat,se,k_hat,k_lo,k_hi\n";
  for (const auto& e : est.per_epsilon) {
    out += format_double(e.epsilon);
    out += ',';
    out += std::to_string(e.hits);
    out += ',';
    out += format_double(e.p_hat);
    out += ',';
    out += format_double(e.se);
    out += ',';
    out += e.k_valid ? format_double(e.k_hat) : std::string("nan");
    out += ',';
    out += e.k_valid ? format_double(e.k_lo) : std::string("nan");
    out += ',';
    out += e.k_valid ? format_double(e.k_hi) : std::string("nan");
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const SmallBallEstimate& est) {
  nlohmann::json j;
  j["seminorm"] = to_string(est.seminorm);
  j["p"] = est.p;
  j["route"] = to_string(est.route);
  j["gamma"] = est.gamma;
  j["n_paths"] = est.n_paths;
  j["grid_n"] = est.grid_n;
  j["master_seed"] = est.master_seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : est.per_epsilon) {
    nlohmann::json je;
    je["epsilon"] = e.epsilon;
    je["hits"] = e.hits;
    je["p_hat"] = e.p_hat;
    je["se"] = e.se;
    je["p_lo"] = e.p_lo;
    je["p_hi"] = e.p_hi;
    je["k_valid"] = e.k_valid;
    if (e.k_valid) {
      je["k_hat"] = e.k_hat;
      je["k_lo"] = e.k_lo;
      je["k_hi"] = e.k_hi;
    }
    je["sensitivity_flag"] = e.sensitivity_flag;
    je["p_hat_doubled"] = e.p_hat_doubled;
    arr.push_back(je);
  }
  j["per_epsilon"] = arr;
  nlohmann::json jf;
  jf["valid"] = est.fit.valid;
  if (est.fit.valid) {
    jf["k_fit"] = est.fit.k_fit;
    // c absorbs the pre-asymptotic correction; heuristic, not a rate claim.
    jf["c_fit"] = est.fit.c_fit;
    jf["points"] = est.fit.points;
  }
  j["fit"] = jf;
  j["warnings"] = est.warnings;
  return j;
}

nlohmann::json to_json(const ConstantsReport& rep) {
  nlohmann::json j;
  j["branch"] = to_string(rep.branch);
  j["alpha"] = rep.alpha;
  j["p"] = rep.p;
  j["gamma_exponent"] = rep.gamma;
  if (rep.kappa) j["kappa"] = *rep.kappa;
  if (rep.prop1) j["prop1_constant"] = *rep.prop1;
  if (rep.lower_bound) j["lower_bound_kap"] = *rep.lower_bound;
  if (rep.big_d) j["D_alpha_p"] = *rep.big_d;
  if (rep.small_d) j["d_alpha"] = *rep.small_d;
  if (rep.cp) {
    j["cp_prime"] = {{"value", rep.cp->value}, {"argmax_alpha", rep.cp->argmax_alpha}};
  }
  if (rep.gaussian) {
    j["gaussian"] = {{"sup_constant", rep.gaussian->sup_constant},
                     {"osc_constant", rep.gaussian->osc_constant},
                     {"gamma2", rep.gaussian->gamma2},
                     {"note", rep.gaussian->note}};
  }
  return j;
}

std::string utc_now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& dir, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["master_seed"] = m.master_seed;
  j["version"] = m.version;
  j["config_hash"] = m.hash;
  j["status"] = m.status;
  j["started_utc"] = m.started_utc;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["outputs"] = m.outputs;
  write_text_file(dir + "/manifest.json", j.dump(2) + "\n");
}

}  // namespace smallball
