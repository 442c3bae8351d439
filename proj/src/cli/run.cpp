#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "crystallize/analytic.hpp"
#include "crystallize/asymptotics.hpp"
#include "crystallize/cli.hpp"
#include "crystallize/ensemble.hpp"
#include "crystallize/error.hpp"
#include "crystallize/io.hpp"
#include "crystallize/statistics.hpp"
#include "crystallize/svg.hpp"

namespace crystallize::cli {

namespace {

namespace fs = std::filesystem;
using io::format_number;

std::vector<double> grid(double step, double max) {
  std::vector<double> xs;
  const auto n = static_cast<long>(std::floor(max / step + 1e-9));
  for (long i = 1; i <= n; ++i) xs.push_back(step * static_cast<double>(i));
  return xs;
}

template <typename F>
std::vector<double> tabulate(const std::vector<double>& xs, int threads, F f) {
  std::vector<double> ys(xs.size());
  parallel_for_index(static_cast<std::int64_t>(xs.size()), threads,
                     [&](std::int64_t i) { ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]); });
  return ys;
}

EnsembleSpec ensemble_of(const RunConfig& c) {
  return EnsembleSpec::equal_variance(c.N, c.p, c.realizations, c.seed);
}

EnsembleRunOptions run_options(const RunConfig& c) {
  EnsembleRunOptions o;
  o.threads = c.threads;
  o.roots.oversample = c.oversample;
  return o;
}

std::string csv2(const std::string& h1, const std::string& h2, const std::vector<double>& a,
                 const std::vector<double>& b) {
  const std::string header[2] = {h1, h2};
  const std::vector<double> cols[2] = {a, b};
  return io::columns_csv(header, cols);
}

// Sum of the limiting peak shapes (p/n)(1 + 4u^2)^{-3/2} over the peaks n.
double peak_train(int p, double x, int peaks) {
  double total = 0.0;
  for (int n = 1; n <= peaks; ++n) {
    const double u = p * (x / n - 1.0 - 0.5 / p);
    total += theorem_profile(n, p, u);
  }
  return total;
}

void sample_command(const RunConfig& c, Outputs& out) {
  const auto spec = ensemble_of(c);
  const TrigPolynomial f = sample(spec, c.index);
  out.files["sample.json"] = io::to_json(f).dump(2) + "\n";
  out.stdout_text += io::to_json(f).dump() + "\n";
  if (c.p > 0) out.files["sample_derivative.json"] = io::to_json(sample_derivative(spec, c.index)).dump(2) + "\n";
}

void roots_command(const RunConfig& c, Outputs& out) {
  TrigPolynomial f = TrigPolynomial::zero(0);
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw ConfigError("cannot read --input file '" + c.input + "'");
    nlohmann::json j;
    in >> j;
    f = io::polynomial_from_json(j);
  } else {
    f = sample_derivative(ensemble_of(c), c.index);
  }
  const int N = f.degree();
  auto emit = [&](const RootSet& r) {
    const std::string tag(to_string(r.method));
    out.files["roots_" + tag + ".json"] = io::to_json(r).dump(2) + "\n";
    out.files["roots_" + tag + ".csv"] = io::roots_csv(r);
    out.stdout_text += fmt::format("{}: {} real zeros of {} (fraction {})\n", tag, r.real_roots.size(), 2 * N,
                                   format_number(fraction_real(r, N)));
  };
  if (c.method == "sampled" || c.method == "both") {
    SampledRootOptions o;
    o.oversample = c.oversample;
    emit(real_roots_sampled(f, o));
  }
  if (c.method == "companion" || c.method == "both") emit(all_roots_companion(f));
}

void fraction_command(const RunConfig& c, Outputs& out) {
  std::string csv = "source,value,stderr\n";
  if (c.mode != Mode::empirical) {
    csv += "limit," + format_number(limiting_real_fraction(c.p)) + ",0\n";
    csv += "finite_n," + format_number(expected_real_fraction_finite_n(c.N, c.p)) + ",0\n";
  }
  if (c.mode == Mode::empirical || c.mode == Mode::all) {
    if (c.realizations < 2) throw ConfigError("invalid value for --realizations (expected >= 2 for empirical fraction)");
    const auto est = empirical_real_fraction(ensemble_of(c), run_options(c));
    csv += "empirical," + format_number(est.mean) + "," + format_number(est.stderr_) + "\n";
  }
  out.files["fraction.csv"] = csv;
  out.stdout_text += csv;
}

void paircorr_command(const RunConfig& c, Outputs& out) {
  std::vector<svg::Series> series;
  const bool empirical = c.mode == Mode::empirical || c.mode == Mode::all;
  const bool analytic = c.mode == Mode::analytic || c.mode == Mode::all;
  const bool asymptotic = (c.mode == Mode::asymptotic || c.mode == Mode::all) && c.p >= 1;
  if (empirical) {
    const auto spec = ensemble_of(c);
    const auto roots = ensemble_rescaled_roots(spec, run_options(c));
    auto est = empirical_pair_correlation(roots, c.N, c.bin_width, c.x_max);
    est.ensemble = EnsembleSummary::of(spec);
    out.files["paircorr_empirical.csv"] = io::histogram_csv(est.histogram);
    out.files["paircorr_empirical.json"] = io::sidecar_json(est).dump(2) + "\n";
    series.push_back(svg::from_histogram(io::parse_csv(out.files["paircorr_empirical.csv"]),
                                         fmt::format("Monte Carlo, N={}", c.N)));
    series.back().color = "#888888";
  }
  const auto xs = grid(c.x_step, c.x_max);
  if (analytic) {
    const auto ys = tabulate(xs, c.threads, [&](double x) { return pair_correlation_limit(c.p, x); });
    out.files["paircorr_analytic.csv"] = csv2("x", "R2", xs, ys);
    const auto peak = std::max_element(ys.begin(), ys.end());
    out.stdout_text += fmt::format("analytic maximum R2 = {} at x = {}\n", format_number(*peak),
                                   format_number(xs[static_cast<std::size_t>(peak - ys.begin())]));
    series.push_back(svg::from_columns(io::parse_csv(out.files["paircorr_analytic.csv"]), "x", "R2", "N -> infinity limit"));
  }
  if (asymptotic) {
    const int peaks = static_cast<int>(std::ceil(c.x_max)) + 1;
    const auto ys = tabulate(xs, c.threads, [&](double x) { return peak_train(c.p, x, peaks); });
    out.files["paircorr_asymptotic.csv"] = csv2("x", "R2", xs, ys);
    series.push_back(svg::from_columns(io::parse_csv(out.files["paircorr_asymptotic.csv"]), "x", "R2", "large-p peak profile"));
    series.back().style = svg::Style::dashed;
    series.back().color = "#c0392b";
  }
  if (!series.empty()) {
    svg::Plot plot;
    plot.title = fmt::format("pair correlation of real zeros, p = {}", c.p);
    plot.y_label = "R2(x)";
    plot.y_min = 0.0;
    out.files["paircorr.svg"] = svg::render(plot, series);
  }
}

void spacing_command(const RunConfig& c, Outputs& out) {
  std::vector<svg::Series> series;
  if (c.mode == Mode::empirical || c.mode == Mode::all) {
    const auto roots = ensemble_rescaled_roots(ensemble_of(c), run_options(c));
    SpacingOptions o;
    o.bin_width = c.bin_width;
    const Histogram h = nearest_neighbor_spacings(roots, c.N, o);
    out.files["spacing_empirical.csv"] = io::histogram_csv(h);
    const auto gaps = nearest_neighbor_gaps(roots, c.N);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    out.stdout_text += fmt::format("gaps: {}, mean gap: {}\n", gaps.size(), format_number(mean));
    if (c.p >= 1) {
      std::vector<double> u;
      for (double g : gaps) u.push_back(c.p * (g - 1.0 - 0.5 / c.p));
      out.stdout_text += fmt::format("KS distance of u = p(s - 1 - 1/(2p)) from (1+4u^2)^(-3/2): {}\n",
                                     format_number(kolmogorov_smirnov_distance(u, nn_cdf)));
    }
    series.push_back(svg::from_histogram(io::parse_csv(out.files["spacing_empirical.csv"]), "Monte Carlo"));
    series.back().color = "#888888";
  }
  if (c.mode != Mode::empirical && c.p >= 1) {
    const double hi = std::max(c.x_max, 2.0);
    std::vector<double> s;
    for (double x = 0.0; x <= hi + 1e-12; x += c.x_step / 4) s.push_back(x);
    std::vector<double> d;
    for (double x : s) d.push_back(c.p * nn_density(c.p * (x - 1.0 - 0.5 / c.p)));
    out.files["spacing_asymptotic.csv"] = csv2("s", "density", s, d);
    series.push_back(svg::from_columns(io::parse_csv(out.files["spacing_asymptotic.csv"]), "s", "density", "large-p law"));
    series.back().style = svg::Style::dashed;
    series.back().color = "#c0392b";
  }
  if (!series.empty()) {
    svg::Plot plot;
    plot.title = fmt::format("nearest-neighbor spacing, p = {}", c.p);
    plot.x_label = "s";
    plot.y_label = "density";
    plot.y_min = 0.0;
    out.files["spacing.svg"] = svg::render(plot, series);
  }
}

void vp_table_command(const RunConfig& c, Outputs& out) {
  std::string csv = "p,v_p,finite_n_fraction,new_real_fraction\n";
  for (int p = 0; p <= c.p_max; ++p) {
    csv += fmt::format("{},{},{},{}\n", p, format_number(limiting_real_fraction(p)),
                       format_number(expected_real_fraction_finite_n(c.N, p)),
                       p >= 1 ? format_number(new_real_fraction(p)) : std::string());
  }
  out.files["vp_table.csv"] = csv;
  out.stdout_text += csv;
}

std::string triple_zero_csv(const TripleZeroDemo& d) {
  const std::string header[3] = {"x", "f", "df"};
  const std::vector<double> cols[3] = {d.x, d.f, d.df};
  return io::columns_csv(header, cols);
}

svg::Plot triple_zero_plot(double a) {
  svg::Plot plot;
  plot.title = fmt::format("zeros at 1/2 +- {}i and at the integers except 0, 1", format_number(a));
  plot.y_label = "f, f'";
  plot.y_min = -8.0;
  plot.y_max = 8.0;
  return plot;
}

std::vector<svg::Series> triple_zero_series(const io::Table& t) {
  std::vector<svg::Series> s{svg::from_columns(t, "x", "f", "f"), svg::from_columns(t, "x", "df", "f'")};
  s[1].style = svg::Style::dashed;
  s[1].color = "#c0392b";
  return s;
}

void triple_zero_command(const RunConfig& c, Outputs& out) {
  const auto demo = triple_zero_demo(c.a);
  out.files["triple_zero.csv"] = triple_zero_csv(demo);
  out.files["triple_zero.svg"] = svg::render(triple_zero_plot(c.a), triple_zero_series(io::parse_csv(out.files["triple_zero.csv"])));
  out.stdout_text += fmt::format("a = {}: f' has {} real zeros in (0, 1); triple zero at a = {}\n", format_number(c.a),
                                 demo.derivative_zeros, format_number(triple_zero_critical_a()));
}

void figure_command(const RunConfig& c, Outputs& out) {
  if (c.which == 1) {
    constexpr int N = 30;
    const auto spec = EnsembleSpec::equal_variance(N, 0, 1, c.seed);
    const TrigPolynomial f = sample(spec, 0);
    const int orders[4] = {0, 1, 3, 10};
    std::vector<std::string> header{"x"};
    std::vector<std::vector<double>> cols(1);
    for (int i = 0; i <= 1200; ++i) cols[0].push_back(2.0 * N * i / 1200.0);
    for (int k : orders) {
      const TrigPolynomial g = k == 0 ? f : differentiate_normalized(f, k);
      std::vector<double> y;
      for (double x : cols[0]) y.push_back(evaluate_rescaled(g, N, x));
      const double peak = std::max(std::abs(*std::max_element(y.begin(), y.end())), std::abs(*std::min_element(y.begin(), y.end())));
      for (double& v : y) v /= peak;
      header.push_back(k == 0 ? "F" : fmt::format("F{}", k));
      cols.push_back(std::move(y));
      const auto r = real_roots_sampled(g);
      out.stdout_text += fmt::format("derivative {}: {} of {} zeros real (expected fraction {})\n", k, r.real_roots.size(),
                                     2 * N, format_number(expected_real_fraction_finite_n(N, k)));
    }
    out.files["figure1.csv"] = io::columns_csv(header, cols);
    const auto table = io::parse_csv(out.files["figure1.csv"]);
    for (std::size_t i = 1; i < header.size(); ++i) {
      svg::Plot plot;
      plot.title = orders[i - 1] == 0 ? "degree 30 random trigonometric polynomial"
                                      : fmt::format("derivative {} (normalized)", orders[i - 1]);
      plot.x_label = "N x / pi";
      plot.height = 220;
      plot.y_min = -1.0;
      plot.y_max = 1.0;
      const svg::Series s[1] = {svg::from_columns(table, "x", header[i], "")};
      out.files["figure1_" + header[i] + ".svg"] = svg::render(plot, s);
    }
  } else if (c.which == 2) {
    const int orders[4] = {0, 1, 3, 10};
    const auto xs = grid(c.x_step, c.x_max);
    std::vector<std::string> header{"x"};
    std::vector<std::vector<double>> cols{xs};
    for (int p : orders) {
      header.push_back(fmt::format("R2_p{}", p));
      cols.push_back(tabulate(xs, c.threads, [p](double x) { return pair_correlation_limit(p, x); }));
    }
    out.files["figure2.csv"] = io::columns_csv(header, cols);
    const auto table = io::parse_csv(out.files["figure2.csv"]);
    for (std::size_t i = 0; i < 4; ++i) {
      const int p = orders[i];
      svg::Plot plot;
      plot.title = fmt::format("R2 for p = {}", p);
      plot.y_label = "R2(x)";
      plot.y_min = 0.0;
      const double v2 = limiting_real_fraction(p) * limiting_real_fraction(p);
      svg::Series plateau{"v_p^2", {xs.front(), xs.back()}, {v2, v2}, svg::Style::dashed, "#888888"};
      const svg::Series s[2] = {svg::from_columns(table, "x", header[i + 1], ""), plateau};
      out.files[fmt::format("figure2_p{}.svg", p)] = svg::render(plot, s);
    }
  } else {
    const double as[2] = {0.92, 1.1};
    std::vector<std::string> header{"x"};
    std::vector<std::vector<double>> cols(1);
    for (double a : as) {
      const auto demo = triple_zero_demo(a);
      if (cols[0].empty()) cols[0] = demo.x;
      header.push_back("f_a" + format_number(a));
      cols.push_back(demo.f);
      header.push_back("df_a" + format_number(a));
      cols.push_back(demo.df);
      out.stdout_text += fmt::format("a = {}: f' has {} real zeros in (0, 1)\n", format_number(a), demo.derivative_zeros);
    }
    out.files["figure3.csv"] = io::columns_csv(header, cols);
    const auto table = io::parse_csv(out.files["figure3.csv"]);
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string tag = format_number(as[i]);
      std::vector<svg::Series> s{svg::from_columns(table, "x", "f_a" + tag, "f"),
                                 svg::from_columns(table, "x", "df_a" + tag, "f'")};
      s[1].style = svg::Style::dashed;
      s[1].color = "#c0392b";
      out.files["figure3_a" + tag + ".svg"] = svg::render(triple_zero_plot(as[i]), s);
    }
  }
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("invalid value for --out: cannot create '" + dir.string() + "': " + ec.message());
  const fs::path probe = dir / ".crystallize-write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError("invalid value for --out: '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_all(const fs::path& dir, const std::map<std::string, std::string>& files) {
  std::vector<fs::path> written;
  try {
    for (const auto& [name, content] : files) {
      const fs::path target = dir / name;
      const fs::path tmp = dir / (name + ".partial");
      {
        std::ofstream f(tmp, std::ios::binary);
        f << content;
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
      }
      written.push_back(tmp);
      fs::rename(tmp, target);
      written.back() = target;
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

}  // namespace

Outputs compute(const RunConfig& config) {
  config.validate();
  Outputs out;
  switch (config.command) {
    case Command::sample: sample_command(config, out); break;
    case Command::roots: roots_command(config, out); break;
    case Command::fraction: fraction_command(config, out); break;
    case Command::paircorr: paircorr_command(config, out); break;
    case Command::spacing: spacing_command(config, out); break;
    case Command::vp_table: vp_table_command(config, out); break;
    case Command::demo_triple_zero: triple_zero_command(config, out); break;
    case Command::figure: figure_command(config, out); break;
  }
  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config.to_json();
  auto names = nlohmann::json::array();
  for (const auto& [name, content] : out.files) names.push_back(name);
  manifest["outputs"] = names;
  out.files["manifest.json"] = manifest.dump(2) + "\n";
  return out;
}

int run(const RunConfig& config) {
  const std::string where = fmt::format("{} (N={}, p={}, M={}, seed={})", to_string(config.command), config.N, config.p,
                                        config.realizations, config.seed);
  try {
    ensure_writable(config.out_dir);
    const Outputs out = compute(config);
    write_all(config.out_dir, out.files);
    std::cout << out.stdout_text;
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "crystallize: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "crystallize " << where << ": numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "crystallize " << where << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "crystallize " << where << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "crystallize " << where << ": " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace crystallize::cli
