#include "obslab_cli/report.hpp"

#include <cstdlib>

#include "obslab/error.hpp"
#include "obslab/graph_io.hpp"

namespace obslab::cli {

int SuiteResult::failed() const {
  int bad = 0;
  for (const auto& r : instances) bad += r.ok ? 0 : 1;
  return bad;
}

int worker_count() {
  if (const char* env = std::getenv("OBSLAB_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) throw InvalidInput("OBSLAB_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_report(std::ostream& out, const std::string& command, const std::vector<std::string>& argv,
                  std::optional<std::uint64_t> seed, const SuiteResult& result, double elapsed_ms) {
  for (std::size_t i = 0; i < result.instances.size(); ++i) {
    const auto& r = result.instances[i];
    nlohmann::ordered_json line;
    line["schema"] = kReportSchema;
    line["type"] = "instance";
    line["index"] = i;
    for (auto it = r.fields.begin(); it != r.fields.end(); ++it) line[it.key()] = it.value();
    line["ok"] = r.ok;
    if (!r.detail.empty()) line["detail"] = r.detail;
    if (r.counterexample) line["counterexample"] = graph_to_json(*r.counterexample);
    out << line.dump() << '\n';
  }
  nlohmann::ordered_json summary;
  summary["schema"] = kReportSchema;
  summary["type"] = "summary";
  summary["command"] = command;
  summary["argv"] = argv;
  summary["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  const int failed = result.failed();
  summary["instances"] = result.instances.size();
  summary["passed"] = static_cast<int>(result.instances.size()) - failed;
  summary["failed"] = failed;
  for (auto it = result.extra.begin(); it != result.extra.end(); ++it) summary[it.key()] = it.value();
  summary["timing"] = {{"elapsed_ms", elapsed_ms}};
  out << summary.dump() << '\n';
}

}  // namespace obslab::cli
