// Copyright 2026 The lsvmet Authors
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

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lsvmet/analysis.hpp"
#include "lsvmet/metrology.hpp"
#include "lsvmet/protocols.hpp"
#include "lsvmet/states.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

using lsvmet::metrology::DickeFrame;
using lsvmet::metrology::EstimationContext;

// All numbers in emitted files carry 17 significant digits so that every
// double round-trips exactly and reruns are byte-identical.
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ll(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", v);
  return buf;
}

// JSON value of a double: infinities have no JSON number form and are
// emitted as null (the CSV writer prints "inf" for the same field).
std::string json_num(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt17(v);
}

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

// Ordered flat JSON object; values arrive pre-rendered.
class JsonObject {
 public:
  JsonObject& field(const std::string& key, const std::string& rendered) {
    fields_.emplace_back(key, rendered);
    return *this;
  }
  JsonObject& num(const std::string& key, double v) {
    return field(key, json_num(v));
  }
  JsonObject& integer(const std::string& key, long long v) {
    return field(key, fmt_ll(v));
  }
  JsonObject& str(const std::string& key, const std::string& v) {
    return field(key, json_str(v));
  }
  std::string render() const {
    std::string out = "{";
    for (size_t i = 0; i < fields_.size(); ++i) {
      if (i) out += ",";
      out += json_str(fields_[i].first) + ":" + fields_[i].second;
    }
    out += "}";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256: digest computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

// Collects output artifacts for one command run. With --out, each artifact
// is written to disk and the run manifest lands at <out>.manifest.json;
// without --out, artifacts print to stdout in registration order.
class OutputSink {
 public:
  OutputSink(std::string command, std::string out_path)
      : command_(std::move(command)),
        out_path_(std::move(out_path)),
        start_(std::chrono::steady_clock::now()) {}

  void parameter(const std::string& key, const std::string& rendered) {
    params_.field(key, rendered);
  }

  void add(const std::string& suffix, const std::string& content) {
    artifacts_.emplace_back(out_path_.empty() ? "" : out_path_ + suffix,
                            content);
  }

  void finish() {
    if (out_path_.empty()) {
      for (const auto& [path, content] : artifacts_) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
      }
      return;
    }
    for (const auto& [path, content] : artifacts_) write(path, content);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    std::string outputs = "[";
    for (size_t i = 0; i < artifacts_.size(); ++i) {
      if (i) outputs += ",";
      outputs += JsonObject()
                     .str("path", artifacts_[i].first)
                     .str("sha256", sha256_hex(artifacts_[i].second))
                     .render();
    }
    outputs += "]";
    const std::string manifest = JsonObject()
                                     .str("command", command_)
                                     .field("parameters", params_.render())
                                     .str("version", LSVMET_VERSION)
                                     .num("wall_time_s", wall)
                                     .field("outputs", outputs)
                                     .render() +
                                 "\n";
    write(out_path_ + ".manifest.json", manifest);
  }

 private:
  static void write(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      throw std::runtime_error("cannot open output file: " + path);
    }
    f << content;
    f.flush();
    if (!f) {
      throw std::runtime_error("failed writing output file: " + path);
    }
  }

  std::string command_;
  std::string out_path_;
  std::chrono::steady_clock::time_point start_;
  JsonObject params_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
};

double parse_spin(const std::string& text) {
  try {
    size_t pos = 0;
    if (const size_t slash = text.find('/'); slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash), &pos);
      if (pos != slash) throw std::invalid_argument(text);
      const double den = std::stod(text.substr(slash + 1), &pos);
      if (pos != text.size() - slash - 1 || den == 0.0) {
        throw std::invalid_argument(text);
      }
      return num / den;
    }
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("--j: cannot parse spin value '" + text +
                                "' (use e.g. 7/2 or 3.5)");
  }
}

DickeFrame parse_frame(const std::string& text) {
  if (text == "ramsey") return DickeFrame::ramsey;
  if (text == "phase") return DickeFrame::free_phase;
  throw std::invalid_argument("--frame: must be 'ramsey' or 'phase' (got '" +
                              text + "')");
}

struct CommonFlags {
  double T = 1.0;
  long long nu = 1;
  std::string format = "csv";
  std::string out;
};

void add_context_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--T", flags->T, "Probe evolution duration in seconds")
      ->capture_default_str();
  cmd->add_option("--nu", flags->nu, "Number of experimental trials")
      ->capture_default_str();
}

void add_io_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--format", flags->format, "Table serialization")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", flags->out,
                  "Output file; siblings <out>.*.json and "
                  "<out>.manifest.json are written next to it. Without "
                  "--out everything prints to stdout and no manifest is "
                  "produced");
}

EstimationContext make_context(const CommonFlags& flags, int n) {
  EstimationContext ctx;
  ctx.T = flags.T;
  ctx.nu = flags.nu;
  ctx.n = n;
  return ctx;
}

std::string frame_name(DickeFrame frame) {
  return frame == DickeFrame::ramsey ? "ramsey" : "phase";
}

// ---------------------------------------------------------------- qfi ----

int run_qfi(const std::string& state, long long n, const std::string& j_text,
            DickeFrame frame, const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("qfi", flags.out);
  if (n < 1) {
    throw std::invalid_argument("--n: particle count must be >= 1");
  }
  double j = 1.0;
  double fq = 0.0;
  if (state == "noon") {
    fq = metrology::qfi_cat(states::noon_state(static_cast<int>(n)));
  } else if (state == "dicke") {
    fq = metrology::qfi_dicke_fast(n, frame);
  } else if (state == "twinfock") {
    fq = metrology::qfi_cat(
        states::twin_fock_superposition(static_cast<int>(n)));
  } else if (state == "pairs") {
    j = parse_spin(j_text);
    fq = metrology::qfi_cat(
        states::paired_dfs_cat(static_cast<int>(n), j, j, 0.5));
  } else if (state == "product") {
    const fock_space::complex a{0.70710678118654752440, 0.0};
    const auto psi =
        states::product_state(static_cast<int>(n), {a, a, {0.0, 0.0}});
    const auto h = fock_space::build_operator(psi.basis,
                                              fock_space::OperatorKind::h);
    fq = metrology::qfi_pure(psi, h);
  } else {
    throw std::invalid_argument(
        "--state: must be one of noon|dicke|pairs|twinfock|product");
  }
  EstimationContext ctx = make_context(flags, static_cast<int>(n));
  const double bound = metrology::qcrb(fq, ctx);

  sink.parameter("state", json_str(state));
  sink.parameter("n", fmt_ll(n));
  sink.parameter("j", json_num(j));
  if (state == "dicke") sink.parameter("frame", json_str(frame_name(frame)));
  sink.parameter("T", json_num(flags.T));
  sink.parameter("nu", fmt_ll(flags.nu));
  sink.add("", JsonObject()
                   .str("state", state)
                   .integer("n", n)
                   .num("j", j)
                   .num("fq", fq)
                   .num("qcrb", bound)
                   .num("T", flags.T)
                   .integer("nu", flags.nu)
                   .render() +
                   "\n");
  sink.finish();
  return 0;
}

// --------------------------------------------------------------- fig1 ----

int run_fig1(long long n_min, long long n_max, int points, DickeFrame frame,
             const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("fig1", flags.out);
  EstimationContext ctx = make_context(flags, 0);
  const auto rows = analysis::qcrb_curve(n_min, n_max, points, ctx, frame);

  std::string table;
  if (flags.format == "csv") {
    table = "N,dk_sql,dk_hl,dk_dicke,improvement_db\n";
    for (const auto& r : rows) {
      table += fmt_ll(r.n) + "," + fmt17(r.dk_sql) + "," + fmt17(r.dk_hl) +
               "," + fmt17(r.dk_dicke) + "," + fmt17(r.improvement_db) + "\n";
    }
  } else {
    table = "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      table += JsonObject()
                   .integer("N", rows[i].n)
                   .num("dk_sql", rows[i].dk_sql)
                   .num("dk_hl", rows[i].dk_hl)
                   .num("dk_dicke", rows[i].dk_dicke)
                   .num("improvement_db", rows[i].improvement_db)
                   .render();
      table += i + 1 < rows.size() ? ",\n" : "\n";
    }
    table += "]\n";
  }

  sink.parameter("n_min", fmt_ll(n_min));
  sink.parameter("n_max", fmt_ll(n_max));
  sink.parameter("points", fmt_ll(points));
  sink.parameter("frame", json_str(frame_name(frame)));
  sink.parameter("format", json_str(flags.format));
  sink.parameter("T", json_num(flags.T));
  sink.parameter("nu", fmt_ll(flags.nu));
  sink.add("", table);
  sink.finish();
  return 0;
}

// --------------------------------------------------------------- fig2 ----

int run_fig2(long long n_min, long long n_max, int points, DickeFrame frame,
             const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("fig2", flags.out);
  const auto grid = analysis::even_log_grid(n_min, n_max, points);
  std::vector<std::pair<double, double>> data;
  data.reserve(grid.size());
  for (long long n : grid) {
    data.emplace_back(static_cast<double>(n),
                      metrology::qfi_dicke_fast(n, frame));
  }
  const auto fit = analysis::power_law_fit(data);  // needs >= 3 grid points

  std::string table;
  if (flags.format == "csv") {
    table = "N,fq_dicke\n";
    for (size_t i = 0; i < grid.size(); ++i) {
      table += fmt_ll(grid[i]) + "," + fmt17(data[i].second) + "\n";
    }
  } else {
    table = "[\n";
    for (size_t i = 0; i < grid.size(); ++i) {
      table += JsonObject()
                   .integer("N", grid[i])
                   .num("fq_dicke", data[i].second)
                   .render();
      table += i + 1 < grid.size() ? ",\n" : "\n";
    }
    table += "]\n";
  }
  const std::string fit_record =
      JsonObject()
          .num("a", fit.a)
          .num("gamma", fit.gamma)
          .num("r2", fit.r2)
          .field("n_range",
                 "[" + fmt_ll(grid.front()) + "," + fmt_ll(grid.back()) + "]")
          .render() +
      "\n";

  sink.parameter("n_min", fmt_ll(n_min));
  sink.parameter("n_max", fmt_ll(n_max));
  sink.parameter("points", fmt_ll(points));
  sink.parameter("frame", json_str(frame_name(frame)));
  sink.parameter("format", json_str(flags.format));
  sink.add("", table);
  sink.add(".fit.json", fit_record);
  sink.finish();
  return 0;
}

// ------------------------------------------------------------- parity ----

int run_parity(long long n, double kt_min, double kt_max, int points,
               const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("parity", flags.out);
  if (n < 1) {
    throw std::invalid_argument("--n: particle count must be >= 1");
  }
  const auto scan =
      protocols::parity_scan(static_cast<int>(n), kt_min, kt_max, points);

  std::string table;
  if (flags.format == "csv") {
    table = "kt,parity_sim,parity_closed_form,abs_diff\n";
    for (const auto& r : scan.rows) {
      table += fmt17(r.kt) + "," + fmt17(r.sim) + ",";
      if (r.closed_form) table += fmt17(*r.closed_form);
      table += ",";
      if (r.abs_diff) table += fmt17(*r.abs_diff);
      table += "\n";
    }
  } else {
    table = "[\n";
    for (size_t i = 0; i < scan.rows.size(); ++i) {
      const auto& r = scan.rows[i];
      table += JsonObject()
                   .num("kt", r.kt)
                   .num("parity_sim", r.sim)
                   .field("parity_closed_form",
                          r.closed_form ? json_num(*r.closed_form) : "null")
                   .field("abs_diff",
                          r.abs_diff ? json_num(*r.abs_diff) : "null")
                   .render();
      table += i + 1 < scan.rows.size() ? ",\n" : "\n";
    }
    table += "]\n";
  }

  sink.parameter("n", fmt_ll(n));
  sink.parameter("kt_min", json_num(kt_min));
  sink.parameter("kt_max", json_num(kt_max));
  sink.parameter("points", fmt_ll(points));
  sink.parameter("format", json_str(flags.format));
  sink.add("", table);
  sink.finish();
  return 0;
}

// ------------------------------------------------------------- moment ----

std::vector<long long> parse_sweep(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = c1 == std::string::npos ? std::string::npos
                                            : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument(
        "--sweep: expected '<start>:<stop>:<step>' or '<start>:<stop>:even'");
  }
  long long start = 0, stop = 0, step = 0;
  try {
    start = std::stoll(text.substr(0, c1));
    stop = std::stoll(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string step_text = text.substr(c2 + 1);
    step = step_text == "even" ? 2 : std::stoll(step_text);
  } catch (const std::exception&) {
    throw std::invalid_argument("--sweep: cannot parse '" + text + "'");
  }
  if (step < 1 || stop < start) {
    throw std::invalid_argument("--sweep: need start <= stop and step >= 1");
  }
  std::vector<long long> ns;
  for (long long n = start; n <= stop; n += step) ns.push_back(n);
  return ns;
}

std::string precision_record(const lsvmet::metrology::PrecisionResult& res) {
  JsonObject obj;
  obj.integer("n", res.n);
  obj.str("protocol", "moment");
  if (res.kt) obj.num("kt_opt", *res.kt);
  obj.num("fisher", res.fisher);
  obj.num("delta_kappa", res.delta_kappa);
  obj.num("T", res.T);
  obj.integer("nu", res.nu);
  return obj.render() + "\n";
}

int run_moment_single(long long n, const lsvmet::protocols::ScanGrid& grid,
                      const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("moment", flags.out);
  if (n < 1) {
    throw std::invalid_argument("--n: particle count must be >= 1");
  }
  EstimationContext ctx = make_context(flags, static_cast<int>(n));
  const auto probe = states::dicke_balanced(static_cast<int>(n));
  const auto scan = protocols::moment_scan(probe, ctx, grid);

  std::string table;
  if (flags.format == "csv") {
    table = "kt,mean_jx2,var_jx2,slope,dk\n";
    for (const auto& p : scan.points) {
      table += fmt17(p.kt) + "," + fmt17(p.mean_jx2) + "," +
               fmt17(p.var_jx2) + "," + fmt17(p.slope) + "," +
               fmt17(p.delta_kappa) + "\n";
    }
  } else {
    table = "[\n";
    for (size_t i = 0; i < scan.points.size(); ++i) {
      const auto& p = scan.points[i];
      table += JsonObject()
                   .num("kt", p.kt)
                   .num("mean_jx2", p.mean_jx2)
                   .num("var_jx2", p.var_jx2)
                   .num("slope", p.slope)
                   .num("dk", p.delta_kappa)
                   .render();
      table += i + 1 < scan.points.size() ? ",\n" : "\n";
    }
    table += "]\n";
  }

  metrology::PrecisionResult opt;
  opt.n = static_cast<int>(n);
  opt.protocol = metrology::Protocol::moment;
  opt.fisher = scan.optimum.slope * scan.optimum.slope / scan.optimum.var_jx2;
  opt.delta_kappa = scan.optimum.delta_kappa;
  opt.kt = scan.optimum.kt;
  opt.T = ctx.T;
  opt.nu = ctx.nu;

  sink.parameter("n", fmt_ll(n));
  sink.parameter("kt_min", json_num(grid.kt_min));
  sink.parameter("kt_max", json_num(grid.kt_max));
  sink.parameter("points", fmt_ll(grid.points));
  sink.parameter("T", json_num(flags.T));
  sink.parameter("nu", fmt_ll(flags.nu));
  sink.parameter("format", json_str(flags.format));
  sink.add("", table);
  sink.add(".optimum.json", precision_record(opt));
  sink.finish();
  return 0;
}

int run_moment_sweep(const std::string& sweep,
                     const lsvmet::protocols::ScanGrid& grid,
                     const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("moment", flags.out);
  const std::vector<long long> ns = parse_sweep(sweep);
  if (ns.size() < 3) {
    throw std::invalid_argument("--sweep: fit needs at least 3 values of N");
  }

  std::vector<metrology::PrecisionResult> results(ns.size());
  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < ns.size();) {
      try {
        EstimationContext ctx = make_context(flags, static_cast<int>(ns[i]));
        results[i] = protocols::optimal_moment_precision(
            static_cast<int>(ns[i]), ctx, grid);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads =
      std::min<unsigned>(hw, static_cast<unsigned>(ns.size()));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<std::pair<double, double>> fit_data;
  fit_data.reserve(ns.size());
  for (size_t i = 0; i < ns.size(); ++i) {
    fit_data.emplace_back(static_cast<double>(ns[i]),
                          results[i].delta_kappa);
  }
  const auto fit = analysis::power_law_fit(fit_data);

  std::string table;
  if (flags.format == "csv") {
    table = "N,kt_opt,dk_opt\n";
    for (size_t i = 0; i < ns.size(); ++i) {
      table += fmt_ll(ns[i]) + "," + fmt17(*results[i].kt) + "," +
               fmt17(results[i].delta_kappa) + "\n";
    }
  } else {
    table = "[\n";
    for (size_t i = 0; i < ns.size(); ++i) {
      table += JsonObject()
                   .integer("N", ns[i])
                   .num("kt_opt", *results[i].kt)
                   .num("dk_opt", results[i].delta_kappa)
                   .render();
      table += i + 1 < ns.size() ? ",\n" : "\n";
    }
    table += "]\n";
  }
  const std::string fit_record =
      JsonObject()
          .num("a", fit.a)
          .num("gamma", fit.gamma)
          .num("r2", fit.r2)
          .field("n_range",
                 "[" + fmt_ll(ns.front()) + "," + fmt_ll(ns.back()) + "]")
          .render() +
      "\n";

  sink.parameter("sweep", json_str(sweep));
  sink.parameter("kt_min", json_num(grid.kt_min));
  sink.parameter("kt_max", json_num(grid.kt_max));
  sink.parameter("points", fmt_ll(grid.points));
  sink.parameter("T", json_num(flags.T));
  sink.parameter("nu", fmt_ll(flags.nu));
  sink.parameter("format", json_str(flags.format));
  sink.add("", table);
  sink.add(".fit.json", fit_record);
  sink.finish();
  return 0;
}

// -------------------------------------------------------- sensitivity ----

int run_sensitivity(double dk_over_2pi, double energy_ratio, double jz2_fluct,
                    const CommonFlags& flags) {
  using namespace lsvmet;
  OutputSink sink("sensitivity", flags.out);
  analysis::SensitivityInput inp;
  inp.delta_kappa_over_2pi = dk_over_2pi;
  inp.energy_ratio = energy_ratio;
  inp.jz2_fluct = jz2_fluct;
  const double c02 = analysis::kappa_to_c02(inp);

  sink.parameter("dk_over_2pi", json_num(dk_over_2pi));
  sink.parameter("energy_ratio", json_num(energy_ratio));
  sink.parameter("jz2_fluct", json_num(jz2_fluct));
  sink.add("", JsonObject().num("c02_bound", c02).render() + "\n");
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lsvmet: precision bounds and measurement protocols for estimating "
      "the Lorentz-violation coupling kappa of the collective generator "
      "H = sum_i (j_z^(i))^2 with entangled spin-1 probes"};
  app.set_version_flag("--version", LSVMET_VERSION);
  app.require_subcommand(1);

  // qfi
  auto* qfi = app.add_subcommand(
      "qfi", "QFI and QCRB of one probe state (JSON record)");
  std::string qfi_state;
  long long qfi_n = 0;
  std::string qfi_j = "7/2";
  std::string qfi_frame = "ramsey";
  CommonFlags qfi_flags;
  qfi->add_option("--state", qfi_state, "noon|dicke|pairs|twinfock|product")
      ->required();
  qfi->add_option("--n", qfi_n, "Particle count")->required();
  qfi->add_option("--j", qfi_j,
                  "Single-particle spin for pairs (e.g. 7/2 or 3.5)")
      ->capture_default_str();
  qfi->add_option("--frame", qfi_frame,
                  "Dicke QFI frame: 'ramsey' (full Ramsey sequence, "
                  "~N^1.9) or 'phase' (bare phase accumulation, 4 Var H)")
      ->check(CLI::IsMember({"ramsey", "phase"}))
      ->capture_default_str();
  add_context_flags(qfi, &qfi_flags);
  qfi->add_option("--out", qfi_flags.out, "Output file (default stdout)");

  // fig1
  auto* fig1 = app.add_subcommand(
      "fig1", "QCRB vs N for SQL, Heisenberg limit, and Dicke probe");
  long long fig1_nmin = 2, fig1_nmax = 10000;
  int fig1_points = 40;
  std::string fig1_frame = "phase";
  CommonFlags fig1_flags;
  fig1->add_option("--n-min", fig1_nmin, "Smallest N")->capture_default_str();
  fig1->add_option("--n-max", fig1_nmax, "Largest N")->capture_default_str();
  fig1->add_option("--points", fig1_points, "Grid size")
      ->capture_default_str();
  fig1->add_option("--frame", fig1_frame,
                   "Dicke column frame: 'phase' (QCRB of the bare phase "
                   "accumulation) or 'ramsey'")
      ->check(CLI::IsMember({"ramsey", "phase"}))
      ->capture_default_str();
  add_context_flags(fig1, &fig1_flags);
  add_io_flags(fig1, &fig1_flags);

  // fig2
  auto* fig2 = app.add_subcommand(
      "fig2", "Dicke QFI vs N with a power-law fit record");
  long long fig2_nmin = 10, fig2_nmax = 1000;
  int fig2_points = 25;
  std::string fig2_frame = "ramsey";
  CommonFlags fig2_flags;
  fig2->add_option("--n-min", fig2_nmin, "Smallest N")->capture_default_str();
  fig2->add_option("--n-max", fig2_nmax, "Largest N")->capture_default_str();
  fig2->add_option("--points", fig2_points, "Grid size")
      ->capture_default_str();
  fig2->add_option("--frame", fig2_frame,
                   "QFI frame: 'ramsey' (~N^1.9 scaling of the full Ramsey "
                   "sequence) or 'phase'")
      ->check(CLI::IsMember({"ramsey", "phase"}))
      ->capture_default_str();
  add_io_flags(fig2, &fig2_flags);

  // parity
  auto* parity = app.add_subcommand(
      "parity", "NOON parity signal vs kt against the closed form");
  long long parity_n = 0;
  double parity_ktmin = 0.0, parity_ktmax = kPi;
  int parity_points = 64;
  CommonFlags parity_flags;
  parity->add_option("--n", parity_n, "Particle count")->required();
  parity->add_option("--kt-min", parity_ktmin, "Grid start (dimensionless)")
      ->capture_default_str();
  parity->add_option("--kt-max", parity_ktmax, "Grid end")
      ->capture_default_str();
  parity->add_option("--points", parity_points, "Inclusive grid size")
      ->capture_default_str();
  add_io_flags(parity, &parity_flags);

  // moment
  auto* moment = app.add_subcommand(
      "moment",
      "Jx^2 moment protocol for the balanced Dicke probe: kt scan for one N "
      "or optimum-vs-N sweep");
  long long moment_n = 0;
  std::string moment_sweep;
  lsvmet::protocols::ScanGrid moment_grid;
  CommonFlags moment_flags;
  auto* moment_n_opt =
      moment->add_option("--n", moment_n, "Particle count (single-N scan)");
  auto* moment_sweep_opt = moment->add_option(
      "--sweep", moment_sweep,
      "N sweep '<start>:<stop>:<step>' or '<start>:<stop>:even'");
  moment_n_opt->excludes(moment_sweep_opt);
  moment->add_option("--kt-min", moment_grid.kt_min,
                     "Grid start; the grid is left-open so kt_min itself is "
                     "excluded")
      ->capture_default_str();
  moment->add_option("--kt-max", moment_grid.kt_max, "Grid end (included)")
      ->capture_default_str();
  moment->add_option("--points", moment_grid.points, "Grid size")
      ->capture_default_str();
  add_context_flags(moment, &moment_flags);
  add_io_flags(moment, &moment_flags);

  // sensitivity
  auto* sens = app.add_subcommand(
      "sensitivity",
      "Convert a kappa/2pi resolution into a bound on the SME coefficient "
      "C_0^(2)");
  double sens_dk = 0.0, sens_ratio = 0.0, sens_jz2 = 1.0;
  CommonFlags sens_flags;
  sens->add_option("--dk-over-2pi", sens_dk,
                   "Achievable kappa/2pi resolution in Hz")
      ->required();
  sens->add_option("--energy-ratio", sens_ratio,
                   "Delta E / (h C_0^(2)) in Hz (8.6e15 for the Ca+ pair)")
      ->required();
  sens->add_option("--jz2-fluct", sens_jz2,
                   "Delta(j_z^2) fluctuation scale of the probe")
      ->capture_default_str();
  sens->add_option("--out", sens_flags.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (qfi->parsed()) {
      return run_qfi(qfi_state, qfi_n, qfi_j, parse_frame(qfi_frame),
                     qfi_flags);
    }
    if (fig1->parsed()) {
      return run_fig1(fig1_nmin, fig1_nmax, fig1_points,
                      parse_frame(fig1_frame), fig1_flags);
    }
    if (fig2->parsed()) {
      return run_fig2(fig2_nmin, fig2_nmax, fig2_points,
                      parse_frame(fig2_frame), fig2_flags);
    }
    if (parity->parsed()) {
      return run_parity(parity_n, parity_ktmin, parity_ktmax, parity_points,
                        parity_flags);
    }
    if (moment->parsed()) {
      if (!moment_sweep.empty()) {
        return run_moment_sweep(moment_sweep, moment_grid, moment_flags);
      }
      if (moment_n_opt->count() == 0) {
        throw std::invalid_argument("moment: need --n or --sweep");
      }
      return run_moment_single(moment_n, moment_grid, moment_flags);
    }
    if (sens->parsed()) {
      return run_sensitivity(sens_dk, sens_ratio, sens_jz2, sens_flags);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
