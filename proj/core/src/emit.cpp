#include "stoffar/emit.hpp"

#include <fstream>
#include <stdexcept>

#include "stoffar/run_record.hpp"

namespace stoffar {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

CostTable cost_table(const std::vector<ExperimentResult>& results) {
  CostTable t;
  for (const auto& r : results) {
    for (const auto& s : r.summaries) t.set(s.method, r.problem, s.cost());
  }
  return t;
}

std::vector<std::filesystem::path> emit(const std::vector<ExperimentResult>& results,
                                        const std::optional<ProfileTable>& profile,
                                        const std::filesystem::path& dir, const EmitOptions& opts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;

  {
    const auto path = dir / "trace.csv";
    auto out = open_out(path);
    CsvOptions header_opts;
    header_opts.keys = {{"method", ""}, {"problem", ""}, {"run", ""}};
    write_run_record_header(out, header_opts);
    for (const auto& res : results) {
      for (const auto& o : res.runs) {
        CsvOptions c;
        c.include_timing = opts.timing;
        c.keys = {{"method", o.method}, {"problem", res.problem}, {"run", std::to_string(o.run)}};
        write_run_record_rows(out, o.record, c);
      }
    }
    close_out(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "aggregate.csv";
    auto out = open_out(path);
    out << "method,problem,k,active,grad_norm_est,tau,b_g,b_H,epoch,loss,loss_gap\n";
    for (const auto& res : results) {
      for (const auto& s : res.summaries) {
        for (const auto& a : s.curve) {
          out << s.method << ',' << res.problem << ',' << a.k << ',' << a.active << ','
              << format_double(a.grad_norm_est) << ',' << format_double(a.tau) << ','
              << format_double(a.batch_gradient) << ',' << format_double(a.batch_hessian) << ','
              << format_double(a.epoch) << ',' << opt(a.loss) << ',' << opt(a.loss_gap) << '\n';
        }
      }
    }
    close_out(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "summary.csv";
    auto out = open_out(path);
    out << "method,problem,runs,solved,tau_mean,tau_min,tau_max,iterations_mean,epochs_mean,cost\n";
    for (const auto& res : results) {
      for (const auto& s : res.summaries) {
        out << s.method << ',' << res.problem << ',' << s.runs << ',' << s.solved << ','
            << format_double(s.tau_mean) << ',' << format_double(s.tau_min) << ',' << format_double(s.tau_max)
            << ',' << format_double(s.iterations_mean) << ',' << format_double(s.epochs_mean) << ','
            << format_double(s.cost()) << '\n';
      }
    }
    close_out(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "loss_gap.csv";
    auto out = open_out(path);
    out << "method,problem,run,k,epoch,loss,f_star,loss_gap\n";
    for (const auto& res : results) {
      for (const auto& o : res.runs) {
        for (const auto& r : o.record.rows) {
          if (!r.loss) continue;
          out << o.method << ',' << res.problem << ',' << o.run << ',' << r.k << ',' << format_double(r.epoch)
              << ',' << format_double(*r.loss) << ',' << opt(res.f_star) << ','
              << (res.f_star ? format_double(*r.loss - *res.f_star) : "") << '\n';
        }
      }
    }
    close_out(out, path);
    written.push_back(path);
  }
  if (profile) {
    const auto path = dir / "profile.csv";
    auto out = open_out(path);
    write_profile_csv(out, *profile);
    close_out(out, path);
    written.push_back(path);
  }
  if (opts.plots) {
    for (const auto& res : results) {
      std::vector<PlotSeries> loss;
      std::vector<PlotSeries> samples;
      for (const auto& s : res.summaries) {
        PlotSeries l{s.method, {}, {}};
        PlotSeries b{s.method, {}, {}};
        for (const auto& a : s.curve) {
          if (a.loss_gap && *a.loss_gap > 0.0) {
            l.x.push_back(a.epoch);
            l.y.push_back(*a.loss_gap);
          }
          if (a.active > 0) {
            b.x.push_back(static_cast<double>(a.k));
            b.y.push_back(a.batch_gradient);
          }
        }
        loss.push_back(std::move(l));
        samples.push_back(std::move(b));
      }
      const std::string suffix = results.size() > 1 ? "_" + res.problem : "";
      const auto lp = dir / ("loss" + suffix + ".svg");
      const auto sp = dir / ("samples" + suffix + ".svg");
      write_svg_plot(lp, res.problem + ": loss gap", "epochs", "f - f*", loss, true);
      write_svg_plot(sp, res.problem + ": gradient batch size", "iteration", "b_g", samples, false);
      written.push_back(lp);
      written.push_back(sp);
    }
  }
  return written;
}

}  // namespace stoffar
