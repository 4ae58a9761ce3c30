#include <algorithm>
#include <filesystem>
#include <stdexcept>

#include "pcn/toolkit/toolkit.hpp"

namespace pcn::toolkit {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& path, const std::string& base) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

}  // namespace

BenchConfig bench_config_from_json(const nlohmann::json& j, const std::string& base_dir) {
  BenchConfig cfg;
  for (const nlohmann::json& inst : j.at("instances")) {
    cfg.instances.push_back({inst.at("name").get<std::string>(),
                             resolve(inst.at("network").get<std::string>(), base_dir),
                             resolve(inst.at("transactions").get<std::string>(), base_dir)});
  }
  for (const nlohmann::json& m : j.at("methods")) {
    cfg.methods.push_back(heur::method_from_name(m.get<std::string>()));
  }
  cfg.budget = j.value("budget", std::size_t{2000});
  cfg.repetitions = j.value("repetitions", std::size_t{1});
  if (j.contains("seeds")) {
    for (const nlohmann::json& s : j.at("seeds")) cfg.seeds.push_back(s.get<std::uint64_t>());
  }
  cfg.out_dir = resolve(j.value("out", std::string("bench_out")), base_dir);
  return cfg;
}

std::string render_svg_chart(const std::string& title, const std::vector<CurveSeries>& series) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  constexpr double kLeft = 70.0, kTop = 40.0, kPlotW = 720.0, kPlotH = 440.0;

  std::size_t maxlen = 1;
  double ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (const CurveSeries& s : series) {
    maxlen = std::max(maxlen, s.values.size());
    for (double v : s.values) {
      if (!any) {
        ymin = ymax = v;
        any = true;
      } else {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  }
  if (!any) ymax = 1.0;
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  auto xpos = [&](std::size_t i) {
    if (maxlen <= 1) return kLeft + kPlotW / 2.0;
    return kLeft + kPlotW * static_cast<double>(i) / static_cast<double>(maxlen - 1);
  };
  auto ypos = [&](double v) { return kTop + kPlotH * (1.0 - (v - ymin) / (ymax - ymin)); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 540\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"540\" fill=\"white\"/>\n";
  svg += "<text x=\"430\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";

  // axes and ticks
  svg += "<line x1=\"70\" y1=\"40\" x2=\"70\" y2=\"480\" stroke=\"black\"/>\n";
  svg += "<line x1=\"70\" y1=\"480\" x2=\"790\" y2=\"480\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double frac = static_cast<double>(k) / 4.0;
    const double yv = ymin + frac * (ymax - ymin);
    const double yy = ypos(yv);
    svg += "<line x1=\"66\" y1=\"" + core::double_str(yy) + "\" x2=\"70\" y2=\"" +
           core::double_str(yy) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"62\" y=\"" + core::double_str(yy + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           core::double_str(yv) + "</text>\n";
    const std::size_t xi = maxlen <= 1 ? 0 : static_cast<std::size_t>(frac * (maxlen - 1));
    const double xx = xpos(xi);
    svg += "<line x1=\"" + core::double_str(xx) + "\" y1=\"480\" x2=\"" + core::double_str(xx) +
           "\" y2=\"484\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + core::double_str(xx) +
           "\" y=\"498\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(xi + 1) + "</text>\n";
  }
  svg += "<text x=\"430\" y=\"522\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">evaluation</text>\n";
  svg += "<text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"13\">best "
         "fitness</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const CurveSeries& s = series[si];
    const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
    if (!s.values.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"";
      svg += color;
      svg += "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i) svg += ' ';
        svg += core::double_str(xpos(i)) + "," + core::double_str(ypos(s.values[i]));
      }
      svg += "\"/>\n";
    }
    const double ly = 56.0 + 22.0 * static_cast<double>(si);
    svg += "<rect x=\"806\" y=\"" + core::double_str(ly - 10.0) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"824\" y=\"" + core::double_str(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.instances.empty()) throw std::invalid_argument("bench needs at least one instance");
  if (cfg.methods.empty()) throw std::invalid_argument("bench needs at least one method");
  if (cfg.repetitions == 0) throw std::invalid_argument("bench needs at least one repetition");
  if (cfg.budget == 0) throw std::invalid_argument("bench budget must be positive");
  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (seeds.empty()) {
    for (std::size_t r = 1; r <= cfg.repetitions; ++r) seeds.push_back(r);
  }
  if (seeds.size() < cfg.repetitions) {
    throw std::invalid_argument("bench needs one seed per repetition");
  }

  BenchReport rep;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json instances = nlohmann::json::object();

  auto emit = [&](const std::string& rel, const std::string& content) {
    core::write_file_atomic((fs::path(cfg.out_dir) / rel).string(), content);
    rep.files.push_back(rel);
  };
  auto fail = [&](const std::string& inst, const std::string& method, std::size_t rep_no,
                  const std::string& what) {
    failures.push_back({{"instance", inst},
                        {"method", method},
                        {"repetition", rep_no},
                        {"error", what}});
  };

  for (const BenchInstance& inst : cfg.instances) {
    core::Network net;
    core::TransactionSet txns;
    try {
      net = core::load_network(inst.network_file);
      txns = core::load_transactions(inst.transactions_file);
    } catch (const std::exception& e) {
      fail(inst.name, "", 0, e.what());
      continue;
    }

    nlohmann::json per_method = nlohmann::json::object();
    std::vector<CurveSeries> series;
    for (heur::Method m : cfg.methods) {
      const std::string mname = heur::method_name(m);
      std::vector<std::vector<double>> curves;
      nlohmann::json finals = nlohmann::json::array();
      for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        heur::SearchParams p;
        p.method = m;
        p.budget = cfg.budget;
        p.seed = seeds[r];
        try {
          heur::SearchResult res = heur::run_search(net, txns, p);
          emit(inst.name + "_" + mname + "_r" + std::to_string(r + 1) + ".csv",
               heur::curve_to_csv(res.curve));
          curves.push_back(std::move(res.curve));
          finals.push_back(res.best_fitness.value);
        } catch (const std::exception& e) {
          fail(inst.name, mname, r + 1, e.what());
        }
      }
      if (curves.empty()) continue;

      // Repetitions may stop at different evaluation counts; carrying the
      // last best-so-far value forward keeps the aggregate meaningful.
      std::size_t maxlen = 0;
      for (const std::vector<double>& c : curves) maxlen = std::max(maxlen, c.size());
      std::vector<double> mean(maxlen, 0.0), lo(maxlen, 0.0), hi(maxlen, 0.0);
      for (std::size_t i = 0; i < maxlen; ++i) {
        double sum = 0.0, mn = 0.0, mx = 0.0;
        for (std::size_t c = 0; c < curves.size(); ++c) {
          const std::vector<double>& cur = curves[c];
          const double v = i < cur.size() ? cur[i] : cur.back();
          sum += v;
          if (c == 0) {
            mn = mx = v;
          } else {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
          }
        }
        mean[i] = sum / static_cast<double>(curves.size());
        lo[i] = mn;
        hi[i] = mx;
      }
      std::string agg = "evaluation,mean,min,max\n";
      for (std::size_t i = 0; i < maxlen; ++i) {
        agg += std::to_string(i + 1) + "," + core::double_str(mean[i]) + "," +
               core::double_str(lo[i]) + "," + core::double_str(hi[i]) + "\n";
      }
      emit(inst.name + "_" + mname + "_agg.csv", agg);

      double fmin = finals.front().get<double>(), fmax = fmin, fsum = 0.0;
      for (const nlohmann::json& f : finals) {
        const double v = f.get<double>();
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
        fsum += v;
      }
      per_method[mname] = {{"final", finals},
                           {"final_mean", fsum / static_cast<double>(finals.size())},
                           {"final_min", fmin},
                           {"final_max", fmax},
                           {"curve_length", maxlen}};
      series.push_back({mname, std::move(mean)});
    }
    emit(inst.name + ".svg", render_svg_chart(inst.name, series));
    instances[inst.name] = std::move(per_method);
  }

  nlohmann::json seeds_json = nlohmann::json::array();
  for (std::uint64_t s : seeds) seeds_json.push_back(s);
  rep.summary = {{"budget", cfg.budget},
                 {"repetitions", cfg.repetitions},
                 {"seeds", seeds_json},
                 {"instances", instances},
                 {"failures", failures}};
  emit("summary.json", core::canonical_dump(rep.summary));
  rep.failures = failures.size();
  return rep;
}

}  // namespace pcn::toolkit
