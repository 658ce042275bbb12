#include "wft/error.hpp"
#include "wft/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace wft {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& p) {
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + p.string());
}

} // namespace

void emit_report(const ComparisonReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir.empty() ? "." : dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + root.string() + ": " + ec.message());

  const fs::path results = root / "results.csv";
  std::ofstream csv = open_out(results);
  csv << "t,tv,tv_neg,diam,distance,slope\n";
  for (const auto& r : report.rows)
    csv << fmt(r.t) << ',' << fmt(r.tv) << ',' << fmt(r.tv_neg) << ',' << fmt(r.diam) << ',' << fmt(r.distance)
        << ",NA\n";
  close_out(csv, results);

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"amplitude", r.amplitude}, {"epsilon", r.epsilon}, {"t", r.t}, {"tv", r.tv},
                    {"tv_neg", r.tv_neg}, {"diam", r.diam}, {"distance", r.distance}, {"floor", r.floor}});
  nlohmann::json meta = {{"kind", report.kind},
                         {"version", "wft 0.1.0"},
                         {"config", report.config},
                         {"seed", report.config.is_object() ? report.config.value("seed", 0) : 0},
                         {"rows", rows},
                         {"regime", report.regime},
                         {"extra", report.extra}};
  meta["fit"] = report.fit ? report.fit->to_json() : nlohmann::json(nullptr);
  meta["slope"] = report.fit ? nlohmann::json(report.fit->slope) : nlohmann::json(nullptr);
  meta["error"] = report.error ? nlohmann::json{{"code", report.error->code},
                                                {"message", report.error->message},
                                                {"exit_status", report.error->exit_status}}
                               : nlohmann::json(nullptr);
  const fs::path meta_path = root / "meta.json";
  std::ofstream mj = open_out(meta_path);
  mj << meta.dump(2) << '\n';
  close_out(mj, meta_path);

  for (const auto& [name, run] : {std::pair{"fronts_left.csv", report.left_run}, {"fronts_right.csv", report.right_run}}) {
    const fs::path p = root / name;
    std::ofstream out = open_out(p);
    if (run) run->write_fronts_csv(out);
    else out << "id,t_start,x_start,t_end,x_end,kind,family,size,speed\n";
    close_out(out, p);
  }
}

} // namespace wft
