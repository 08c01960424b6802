#include "cli.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kdekit/bandwidth.hpp"
#include "kdekit/error.hpp"
#include "kdekit/estimators.hpp"
#include "kdekit/histogram.hpp"
#include "kdekit/kernels.hpp"
#include "kdekit/parallel.hpp"
#include "kdekit/sizer.hpp"

namespace kdekit::cli {

namespace {

std::string format9(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string trim(const std::string& s)
{
  const char* ws = " \t\r";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line, char delim)
{
  std::vector<std::string> fields;
  if (delim == ' ' || delim == '\t') {
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) fields.push_back(tok);
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

bool parse_number(const std::string& field, double& value)
{
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  errno = 0;
  value = std::strtod(begin, &end);
  return end == begin + field.size();
}

bool is_all_digits(const std::string& s)
{
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!std::isdigit(c)) return false;
  return true;
}

//! Writes to a file, or to the fallback stream for "-"/empty paths.
class OutputSink {
public:
  OutputSink(const std::string& path, std::ostream& fallback) : path_(path)
  {
    if (path.empty() || path == "-") {
      os_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw error(errc::invalid_argument, "cannot open output file '" + path + "'");
    os_ = &file_;
  }

  std::ostream& stream() { return *os_; }

  void finish()
  {
    os_->flush();
    if (!*os_) {
      throw error(errc::invalid_argument, "failed while writing '" +
                                              (file_.is_open() ? path_ : "standard output") + "'");
    }
  }

private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

std::vector<double> linspace(double lo, double hi, std::size_t points)
{
  if (points < 2) throw error(errc::invalid_argument, "a grid needs at least 2 points");
  if (!(lo < hi)) throw error(errc::invalid_argument, "grid bounds must satisfy lo < hi");
  std::vector<double> grid(points);
  double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

std::vector<double> logspace(double lo, double hi, std::size_t points)
{
  if (!(lo > 0.0)) throw error(errc::invalid_argument, "log-spaced grid bounds must be positive");
  if (points < 2) return {hi};
  std::vector<double> grid = linspace(std::log(lo), std::log(hi), points);
  for (double& g : grid) g = std::exp(g);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

Sample load(const DataSource& source, std::ostream& err)
{
  std::vector<std::string> warnings;
  Sample sample = ingest(source, &warnings);
  std::size_t shown = std::min<std::size_t>(warnings.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) err << "warning: " << warnings[i] << '\n';
  if (warnings.size() > shown)
    err << "warning: (+" << warnings.size() - shown << " more rows skipped)\n";
  return sample;
}

void emit_xy(std::ostream& os, const char* x_name, const char* y_name,
             const std::vector<double>& xs, const std::vector<double>& ys)
{
  os << x_name << ',' << y_name << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << format9(xs[i]) << ',' << format9(ys[i]) << '\n';
}

const std::vector<std::string>& kernel_names()
{
  static const std::vector<std::string> names = {"uniform", "gaussian", "epanechnikov", "biweight",
                                                 "triweight"};
  return names;
}

struct InputOpts {
  DataSource source;
  std::string delimiter = ",";

  char resolved_delimiter() const
  {
    if (delimiter == "\\t") return '\t';
    if (delimiter.size() != 1)
      throw CLI::ValidationError("--delimiter", "expects a single character");
    return delimiter[0];
  }
};

void add_input_flags(CLI::App* cmd, InputOpts& opts)
{
  cmd->add_option("-i,--input", opts.source.path, "Input file; '-' reads standard input")
      ->capture_default_str();
  cmd->add_option("--column", opts.source.column, "1-based column index or header name")
      ->capture_default_str();
  cmd->add_option("--delimiter", opts.delimiter,
                  "Field separator; ' ' or '\\t' split on whitespace runs")
      ->capture_default_str();
  cmd->add_flag("--skip-header", opts.source.skip_header, "Drop the first non-blank row");
  cmd->add_option("--exclude-top", opts.source.exclude_top, "Drop the k largest values")
      ->capture_default_str();
}

Sample load(InputOpts& opts, std::ostream& err)
{
  opts.source.delimiter = opts.resolved_delimiter();
  return load(opts.source, err);
}

}  // namespace

Sample ingest(const DataSource& source, std::istream& in, std::vector<std::string>* warnings)
{
  bool by_index = is_all_digits(source.column);
  std::size_t col = 0;
  if (by_index) {
    unsigned long idx = std::strtoul(source.column.c_str(), nullptr, 10);
    if (idx == 0) throw error(errc::invalid_argument, "column indices are 1-based");
    col = idx - 1;
  }

  std::vector<double> values;
  std::vector<std::string> skipped;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = source.skip_header || !by_index;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line, source.delimiter);
    if (header_pending) {
      header_pending = false;
      if (!by_index) {
        bool found = false;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (trim(fields[i]) == source.column) {
            col = i;
            found = true;
            break;
          }
        }
        if (!found) {
          throw error(errc::ingestion_failure,
                      "column '" + source.column + "' not found in header (line " +
                          std::to_string(line_no) + ")");
        }
      }
      continue;
    }
    if (col >= fields.size()) {
      skipped.push_back("line " + std::to_string(line_no) + ": row has only " +
                        std::to_string(fields.size()) + " field(s)");
      continue;
    }
    std::string field = trim(fields[col]);
    double v = 0.0;
    if (!parse_number(field, v)) {
      skipped.push_back("line " + std::to_string(line_no) + ": unparseable value '" + field + "'");
      continue;
    }
    if (!std::isfinite(v)) {
      throw error(errc::parse_failure,
                  "line " + std::to_string(line_no) + ": non-finite value '" + field + "'");
    }
    values.push_back(v);
  }

  if (values.empty()) {
    std::string msg = "no parseable values in input";
    std::size_t shown = std::min<std::size_t>(skipped.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) msg += "; " + skipped[i];
    if (skipped.size() > shown) msg += "; (+" + std::to_string(skipped.size() - shown) + " more)";
    throw error(errc::ingestion_failure, msg);
  }
  if (warnings) *warnings = std::move(skipped);

  if (source.exclude_top > 0) {
    if (source.exclude_top >= values.size()) {
      throw error(errc::ingestion_failure, "--exclude-top " + std::to_string(source.exclude_top) +
                                               " leaves an empty sample");
    }
    std::sort(values.begin(), values.end());
    values.resize(values.size() - source.exclude_top);
  }
  return Sample(std::move(values));
}

Sample ingest(const DataSource& source, std::vector<std::string>* warnings)
{
  if (source.path == "-") return ingest(source, std::cin, warnings);
  std::ifstream file(source.path);
  if (!file) throw error(errc::ingestion_failure, "cannot open input file '" + source.path + "'");
  return ingest(source, file, warnings);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Kernel density estimation toolkit"};
  app.name("kdekit");
  app.require_subcommand(1);
  // "--h" is the bandwidth flag, so help must not claim the "h" name.
  app.set_help_flag("--help", "Print this help message and exit");
  auto add_subcommand = [&app](const std::string& name, const std::string& description) {
    auto* cmd = app.add_subcommand(name, description);
    cmd->set_help_flag("--help", "Print this help message and exit");
    return cmd;
  };

  // --- hist ------------------------------------------------------------
  struct HistOpts {
    InputOpts in;
    std::string output = "-";
    std::size_t bins = 0;  // 0 = Sturges
    std::optional<double> origin;
    std::optional<double> bin_width;
  } hist_opts;
  auto* hist_cmd = add_subcommand("hist", "Density histogram as bin_left,height CSV");
  add_input_flags(hist_cmd, hist_opts.in);
  hist_cmd->add_option("-o,--output", hist_opts.output, "CSV destination; '-' writes standard output")
      ->capture_default_str();
  hist_cmd->add_option("--bins", hist_opts.bins, "Bin count (default: Sturges' rule)");
  hist_cmd->add_option("--origin", hist_opts.origin, "Left edge of the first bin (default: min)");
  hist_cmd->add_option("--bin-width", hist_opts.bin_width, "Bin width (default: span/bins)")
      ->check(CLI::PositiveNumber);
  hist_cmd->callback([&]() {
    Sample sample = load(hist_opts.in, err);
    HistogramSpec spec;
    spec.origin = hist_opts.origin.value_or(sample.min());
    spec.bin_count = hist_opts.bins != 0 ? hist_opts.bins : sturges(sample.size());
    if (hist_opts.bin_width) {
      spec.bin_width = *hist_opts.bin_width;
    } else {
      double span = sample.max() - spec.origin;
      spec.bin_width =
          span > 0.0 ? (span / static_cast<double>(spec.bin_count)) * (1.0 + 1e-9) : 1.0;
    }
    spec.validate();
    Histogram histogram = build_histogram(sample, spec);
    OutputSink sink(hist_opts.output, out);
    std::vector<double> lefts(spec.bin_count);
    for (std::size_t j = 0; j < spec.bin_count; ++j)
      lefts[j] = spec.origin + spec.bin_width * static_cast<double>(j);
    emit_xy(sink.stream(), "bin_left", "height", lefts, histogram.heights());
    sink.finish();
  });

  // --- kde / cdf ---------------------------------------------------------
  struct CurveOpts {
    InputOpts in;
    std::string output = "-";
    std::string kernel = "gaussian";
    double h = 0.0;  // 0 = rule of thumb
    std::optional<double> grid_lo;
    std::optional<double> grid_hi;
    std::size_t grid_points = 401;
    unsigned threads = 1;
  };
  auto add_curve_flags = [](CLI::App* cmd, CurveOpts& opts) {
    cmd->add_option("-o,--output", opts.output, "CSV destination; '-' writes standard output")
        ->capture_default_str();
    cmd->add_option("--kernel", opts.kernel, "Kernel weight function")
        ->capture_default_str()
        ->check(CLI::IsMember(kernel_names()));
    cmd->add_option("--h", opts.h, "Bandwidth (default: rule of thumb)")
        ->check(CLI::PositiveNumber);
    auto* lo = cmd->add_option("--grid-lo", opts.grid_lo, "Left end of the evaluation grid");
    auto* hi = cmd->add_option("--grid-hi", opts.grid_hi, "Right end of the evaluation grid");
    lo->needs(hi);
    hi->needs(lo);
    cmd->add_option("--grid-points", opts.grid_points, "Number of grid points")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    cmd->add_option("--threads", opts.threads, "Worker threads for grid evaluation")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1024u));
  };

  CurveOpts kde_opts;
  auto* kde_cmd = add_subcommand("kde", "Kernel density estimate as x,value CSV");
  add_input_flags(kde_cmd, kde_opts.in);
  add_curve_flags(kde_cmd, kde_opts);
  kde_cmd->callback([&]() {
    Sample sample = load(kde_opts.in, err);
    double h = kde_opts.h > 0.0 ? kde_opts.h : rule_of_thumb(sample).h;
    std::vector<double> grid = kde_opts.grid_lo
                                   ? linspace(*kde_opts.grid_lo, *kde_opts.grid_hi, kde_opts.grid_points)
                                   : default_grid(sample, h, kde_opts.grid_points);
    DensityEstimate estimate =
        kde_grid(sample, kernel_from_name(kde_opts.kernel), h, grid, kde_opts.threads);
    OutputSink sink(kde_opts.output, out);
    emit_xy(sink.stream(), "x", "value", estimate.grid, estimate.values);
    sink.finish();
  });

  CurveOpts cdf_opts;
  auto* cdf_cmd = add_subcommand("cdf", "Smoothed distribution function as x,value CSV");
  add_input_flags(cdf_cmd, cdf_opts.in);
  add_curve_flags(cdf_cmd, cdf_opts);
  cdf_cmd->callback([&]() {
    Sample sample = load(cdf_opts.in, err);
    double h = cdf_opts.h > 0.0 ? cdf_opts.h : rule_of_thumb(sample).h;
    std::vector<double> grid = cdf_opts.grid_lo
                                   ? linspace(*cdf_opts.grid_lo, *cdf_opts.grid_hi, cdf_opts.grid_points)
                                   : default_grid(sample, h, cdf_opts.grid_points);
    KernelSpec kernel = kernel_from_name(cdf_opts.kernel);
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), cdf_opts.threads,
                 [&](std::size_t i) { values[i] = kdfe_at(sample, kernel, h, grid[i]); });
    OutputSink sink(cdf_opts.output, out);
    emit_xy(sink.stream(), "x", "value", grid, values);
    sink.finish();
  });

  // --- gamma-kde ---------------------------------------------------------
  struct GammaOpts {
    InputOpts in;
    std::string output = "-";
    double b = 0.0;
    double grid_lo = 0.0;
    std::optional<double> grid_hi;
    std::size_t grid_points = 401;
    unsigned threads = 1;
  } gamma_opts;
  auto* gamma_cmd =
      add_subcommand("gamma-kde", "Gamma-kernel estimate for positive data as x,value CSV");
  add_input_flags(gamma_cmd, gamma_opts.in);
  gamma_cmd->add_option("-o,--output", gamma_opts.output, "CSV destination; '-' writes standard output")
      ->capture_default_str();
  gamma_cmd->add_option("--b", gamma_opts.b, "Smoothing parameter of the gamma kernel")
      ->required()
      ->check(CLI::PositiveNumber);
  gamma_cmd->add_option("--grid-lo", gamma_opts.grid_lo, "Left end of the evaluation grid")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  gamma_cmd->add_option("--grid-hi", gamma_opts.grid_hi,
                        "Right end of the evaluation grid (default: max + 4 kernel sd)");
  gamma_cmd->add_option("--grid-points", gamma_opts.grid_points, "Number of grid points")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  gamma_cmd->add_option("--threads", gamma_opts.threads, "Worker threads for grid evaluation")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  gamma_cmd->callback([&]() {
    Sample sample = load(gamma_opts.in, err);
    double b = gamma_opts.b;
    double hi = gamma_opts.grid_hi
                    ? *gamma_opts.grid_hi
                    : sample.max() + 4.0 * std::sqrt(b * sample.max() + b * b);
    std::vector<double> grid = linspace(gamma_opts.grid_lo, hi, gamma_opts.grid_points);
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), gamma_opts.threads,
                 [&](std::size_t i) { values[i] = gamma_kde_at(sample, b, grid[i]); });
    OutputSink sink(gamma_opts.output, out);
    emit_xy(sink.stream(), "x", "value", grid, values);
    sink.finish();
  });

  // --- bandwidth -----------------------------------------------------------
  struct BandwidthOpts {
    InputOpts in;
    std::string method;
    std::string kernel = "gaussian";
    std::string output;  // empty = no trace
    std::optional<double> h_lo;
    std::optional<double> h_hi;
    std::size_t h_points = 64;
    std::optional<double> alpha;
    std::optional<double> sigma;
    std::optional<double> x;
    double c = 0.5;
    double eps = 0.1;
    std::size_t replications = 200;
    std::uint64_t seed = 1;
    std::optional<double> pilot_b;
    std::optional<double> s_lo;
    std::optional<double> s_hi;
    std::size_t s_points = 32;
  } bw_opts;
  auto* bw_cmd =
      add_subcommand("bandwidth", "Select a bandwidth; prints h, optionally traces the search");
  add_input_flags(bw_cmd, bw_opts.in);
  bw_cmd->add_option("--method", bw_opts.method, "Selection rule")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>{"rot", "robust", "plugin", "hsjm", "lscv",
                                                     "bcv", "lcv", "icv", "chan", "bootstrap",
                                                     "sarda"}));
  bw_cmd->add_option("--kernel", bw_opts.kernel, "Kernel for plugin/hsjm/lscv/lcv/sarda")
      ->capture_default_str()
      ->check(CLI::IsMember(kernel_names()));
  bw_cmd->add_option("-o,--output", bw_opts.output, "Write the criterion trace CSV here");
  bw_cmd->add_option("--h-lo", bw_opts.h_lo, "Search interval lower end")
      ->check(CLI::PositiveNumber);
  bw_cmd->add_option("--h-hi", bw_opts.h_hi, "Search interval upper end")
      ->check(CLI::PositiveNumber);
  bw_cmd->add_option("--h-points", bw_opts.h_points, "Search grid size")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{16}, std::size_t{4096}));
  bw_cmd->add_option("--alpha", bw_opts.alpha,
                     "icv: negative-component weight; chan: significance level (default 0.05)");
  bw_cmd->add_option("--sigma", bw_opts.sigma, "icv: scale of the negative component")
      ->check(CLI::PositiveNumber);
  bw_cmd->add_option("--x", bw_opts.x, "Evaluation point for the local selectors (chan, bootstrap)");
  bw_cmd->add_option("--c", bw_opts.c, "chan: scan floor coefficient")->capture_default_str();
  bw_cmd->add_option("--eps", bw_opts.eps, "chan: scan ceiling exponent")->capture_default_str();
  bw_cmd->add_option("--B", bw_opts.replications, "bootstrap: number of replications")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  bw_cmd->add_option("--seed", bw_opts.seed, "bootstrap: RNG seed")->capture_default_str();
  bw_cmd->add_option("--pilot-b", bw_opts.pilot_b, "bootstrap: pilot bandwidth (default: rule of thumb)")
      ->check(CLI::PositiveNumber);
  bw_cmd->add_option("--s-lo", bw_opts.s_lo, "bootstrap: smallest scale factor")
      ->check(CLI::PositiveNumber);
  bw_cmd->add_option("--s-hi", bw_opts.s_hi, "bootstrap: largest scale factor")
      ->check(CLI::PositiveNumber);
  bw_cmd->add_option("--s-points", bw_opts.s_points, "bootstrap: scale grid size")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  bw_cmd->callback([&]() {
    const std::string& method = bw_opts.method;
    auto require = [&](const std::optional<double>& value, const char* flag) {
      if (!value) throw CLI::RequiredError(std::string(flag) + " (with --method " + method + ")");
    };
    Sample sample = load(bw_opts.in, err);
    KernelSpec kernel = kernel_from_name(bw_opts.kernel);
    auto interval = [&]() {
      SearchInterval iv = default_search_interval(sample);
      if (bw_opts.h_lo) iv.lo = *bw_opts.h_lo;
      if (bw_opts.h_hi) iv.hi = *bw_opts.h_hi;
      iv.grid_size = bw_opts.h_points;
      return iv;
    };

    SelectorReport report;
    if (method == "rot") {
      report = rule_of_thumb(sample);
    } else if (method == "robust") {
      report = robust_rule(sample);
    } else if (method == "plugin") {
      report = plugin_iterative(sample, kernel);
    } else if (method == "hsjm") {
      report = hsjm(sample, kernel);
    } else if (method == "lscv") {
      report = select_lscv(sample, kernel, interval());
    } else if (method == "bcv") {
      report = select_bcv(sample, interval());
    } else if (method == "lcv") {
      report = select_likelihood_cv(sample, kernel, interval());
    } else if (method == "icv") {
      require(bw_opts.alpha, "--alpha");
      require(bw_opts.sigma, "--sigma");
      IcvKernelParams params;
      params.alpha = *bw_opts.alpha;
      params.sigma = *bw_opts.sigma;
      report = select_icv(sample, params, interval());
    } else if (method == "chan") {
      require(bw_opts.x, "--x");
      report = chan_local(sample, *bw_opts.x, bw_opts.c, bw_opts.eps, bw_opts.alpha.value_or(0.05));
    } else if (method == "bootstrap") {
      require(bw_opts.x, "--x");
      double pilot = bw_opts.pilot_b ? *bw_opts.pilot_b : rule_of_thumb(sample).h;
      // Scale factors s map to bandwidths h = s n^{-1/5}; the default range
      // brackets the rule of thumb the same way the h-search interval does.
      double s_rot = rule_of_thumb(sample).h *
                     std::pow(static_cast<double>(sample.size()), 0.2);
      double s_lo = bw_opts.s_lo ? *bw_opts.s_lo : 0.05 * s_rot;
      double s_hi = bw_opts.s_hi ? *bw_opts.s_hi : 3.0 * s_rot;
      report = bootstrap_ziegler(sample, *bw_opts.x, pilot, logspace(s_lo, s_hi, bw_opts.s_points),
                                 bw_opts.replications, bw_opts.seed);
    } else if (method == "sarda") {
      report = select_sarda(sample, kernel, interval());
    }

    out << format9(report.h) << '\n';
    if (!report.converged || report.boundary) {
      err << "warning: " << (report.note.empty() ? "selection did not converge" : report.note)
          << '\n';
    }
    if (!bw_opts.output.empty()) {
      OutputSink sink(bw_opts.output, out);
      auto& os = sink.stream();
      os << "# h=" << format9(report.h) << " converged=" << (report.converged ? 1 : 0)
         << " boundary=" << (report.boundary ? 1 : 0) << " iterations=" << report.iterations;
      if (!report.note.empty()) os << " note=" << report.note;
      os << '\n' << "h,score\n";
      for (const auto& [candidate, score] : report.criterion_trace)
        os << format9(candidate) << ',' << format9(score) << '\n';
      sink.finish();
    }
  });

  // --- sizer ---------------------------------------------------------------
  struct SizerOpts {
    InputOpts in;
    double alpha = 0.05;
    int m = 1;
    std::optional<double> x_lo;
    std::optional<double> x_hi;
    std::size_t x_points = 0;  // 0 = keep default
    std::optional<double> h_lo;
    std::optional<double> h_hi;
    std::size_t h_points = 0;
    std::string ppm = "map.ppm";
    std::string csv = "map.csv";
    unsigned threads = 1;
  } sizer_opts;
  auto* sizer_cmd =
      add_subcommand("sizer", "Scale-space significance map as a P6 pixmap plus CSV");
  add_input_flags(sizer_cmd, sizer_opts.in);
  sizer_cmd->add_option("--alpha", sizer_opts.alpha, "Simultaneous significance level")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sizer_cmd->add_option("--m", sizer_opts.m, "Derivative order under test")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  auto* sx_lo = sizer_cmd->add_option("--x-lo", sizer_opts.x_lo, "Left end of the location grid");
  auto* sx_hi = sizer_cmd->add_option("--x-hi", sizer_opts.x_hi, "Right end of the location grid");
  sx_lo->needs(sx_hi);
  sx_hi->needs(sx_lo);
  sizer_cmd->add_option("--x-points", sizer_opts.x_points, "Location grid size (default 101)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  auto* sh_lo = sizer_cmd->add_option("--h-lo", sizer_opts.h_lo, "Smallest bandwidth rung")
                    ->check(CLI::PositiveNumber);
  auto* sh_hi = sizer_cmd->add_option("--h-hi", sizer_opts.h_hi, "Largest bandwidth rung")
                    ->check(CLI::PositiveNumber);
  sh_lo->needs(sh_hi);
  sh_hi->needs(sh_lo);
  sizer_cmd->add_option("--h-points", sizer_opts.h_points, "Bandwidth ladder size (default 21)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000}));
  sizer_cmd->add_option("--out-ppm", sizer_opts.ppm, "Pixmap destination")->capture_default_str();
  sizer_cmd->add_option("--out-csv", sizer_opts.csv, "CSV destination")->capture_default_str();
  sizer_cmd->add_option("--threads", sizer_opts.threads, "Worker threads, one bandwidth row at a time")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  sizer_cmd->callback([&]() {
    Sample sample = load(sizer_opts.in, err);
    ScaleSpaceGrid grid = default_scale_space_grid(sample);
    if (sizer_opts.x_lo || sizer_opts.x_points != 0) {
      double lo = sizer_opts.x_lo ? *sizer_opts.x_lo : grid.x_grid.front();
      double hi = sizer_opts.x_hi ? *sizer_opts.x_hi : grid.x_grid.back();
      std::size_t points = sizer_opts.x_points != 0 ? sizer_opts.x_points : grid.x_grid.size();
      grid.x_grid = linspace(lo, hi, points);
    }
    if (sizer_opts.h_lo || sizer_opts.h_points != 0) {
      double lo = sizer_opts.h_lo ? *sizer_opts.h_lo : grid.h_grid.front();
      double hi = sizer_opts.h_hi ? *sizer_opts.h_hi : grid.h_grid.back();
      std::size_t points = sizer_opts.h_points != 0 ? sizer_opts.h_points : grid.h_grid.size();
      grid.h_grid = logspace(lo, hi, points);
    }
    SizerMap map = sizer_map(sample, grid, sizer_opts.m, sizer_opts.alpha, sizer_opts.threads);
    write_ppm(map, sizer_opts.ppm);
    write_csv(map, sizer_opts.csv);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace kdekit::cli
