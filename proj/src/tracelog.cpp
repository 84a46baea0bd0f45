#include "mrperf/tracelog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <sstream>

namespace mrperf {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string LogDocument::text() const {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

LogDocument LogDocument::from_text(const std::string& text) {
  LogDocument doc;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) doc.lines.push_back(line);
  return doc;
}

namespace {

double parse_num(const std::string& tok, int line_no, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("line {}: bad {} value '{}'", line_no, what, tok));
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

// "key=value" -> value, enforcing the key.
std::string expect_kv(const std::string& tok, const std::string& key, int line_no) {
  const auto pos = tok.find('=');
  if (pos == std::string::npos || tok.substr(0, pos) != key) {
    throw ParseError(fmt::format("line {}: expected {}=<value>, got '{}'", line_no, key, tok));
  }
  return tok.substr(pos + 1);
}

}  // namespace

LogDocument emit_log(const JobTrace& trace) {
  LogDocument doc;
  doc.lines.push_back(fmt::format("JOB {} START containers={} block_mb={}", trace.job_id,
                                  trace.container_count, format_number(trace.block_size_mb)));

  std::vector<const TaskTrace*> ordered;
  ordered.reserve(trace.tasks.size());
  for (const auto& t : trace.tasks) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const TaskTrace* a, const TaskTrace* b) { return a->task_id < b->task_id; });

  for (const TaskTrace* t : ordered) {
    doc.lines.push_back(fmt::format("TASK {} kind={} wave={}", t->task_id,
                                    t->kind == TaskKind::Map ? "MAP" : "REDUCE", t->wave_index));
    const auto counter = [&](const std::string& group_name, double v) {
      doc.lines.push_back(
          fmt::format("COUNTER {} {}={}", t->task_id, group_name, format_number(v)));
    };
    if (t->kind == TaskKind::Map) {
      for (Phase p : kMapPhases) counter(fmt::format("PHASE_MS.{}", phase_name(p)), t->phase_ms.at(p));
      counter("DATA_MB.INPUT", t->input_mb);
      counter("DATA_MB.MAP_OUTPUT", t->output_mb);
      counter("META.SPILL_FILES", t->spill_file_count);
    } else {
      for (Phase p : kReducePhases)
        counter(fmt::format("PHASE_MS.{}", phase_name(p)), t->phase_ms.at(p));
      counter("DATA_MB.SHUFFLE_INPUT", t->input_mb);
      counter("DATA_MB.WRITE_OUTPUT", t->output_mb);
    }
  }
  doc.lines.push_back(
      fmt::format("JOB {} END total_ms={}", trace.job_id, format_number(trace.total_ms)));
  return doc;
}

JobTrace parse_log(const LogDocument& doc, int* skipped_lines) {
  JobTrace trace;
  int skipped = 0;
  bool saw_header = false;
  bool saw_footer = false;
  // task_id -> index in trace.tasks
  std::vector<std::string> task_order;

  auto find_task = [&](const std::string& id, int line_no) -> TaskTrace& {
    for (auto& t : trace.tasks) {
      if (t.task_id == id) return t;
    }
    throw ParseError(fmt::format("line {}: counter for unknown task '{}'", line_no, id));
  };

  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const auto toks = split_ws(doc.lines[i]);
    if (toks.empty()) continue;

    if (toks[0] == "JOB") {
      if (toks.size() < 3) throw ParseError(fmt::format("line {}: malformed JOB line", line_no));
      if (toks[2] == "START") {
        if (toks.size() != 5) {
          throw ParseError(fmt::format("line {}: malformed JOB START line", line_no));
        }
        trace.job_id = toks[1];
        trace.workload.name = toks[1];
        trace.container_count =
            static_cast<int>(parse_num(expect_kv(toks[3], "containers", line_no), line_no,
                                       "containers"));
        trace.block_size_mb = parse_num(expect_kv(toks[4], "block_mb", line_no), line_no,
                                        "block_mb");
        saw_header = true;
      } else if (toks[2] == "END") {
        if (toks.size() != 4) {
          throw ParseError(fmt::format("line {}: malformed JOB END line", line_no));
        }
        trace.total_ms = parse_num(expect_kv(toks[3], "total_ms", line_no), line_no, "total_ms");
        saw_footer = true;
      } else {
        throw ParseError(fmt::format("line {}: unknown JOB marker '{}'", line_no, toks[2]));
      }
    } else if (toks[0] == "TASK") {
      if (toks.size() != 4) throw ParseError(fmt::format("line {}: malformed TASK line", line_no));
      TaskTrace t;
      t.task_id = toks[1];
      const std::string kind = expect_kv(toks[2], "kind", line_no);
      if (kind == "MAP") {
        t.kind = TaskKind::Map;
      } else if (kind == "REDUCE") {
        t.kind = TaskKind::Reduce;
      } else {
        throw ParseError(fmt::format("line {}: unknown task kind '{}'", line_no, kind));
      }
      t.wave_index = static_cast<int>(
          parse_num(expect_kv(toks[3], "wave", line_no), line_no, "wave"));
      trace.tasks.push_back(std::move(t));
    } else if (toks[0] == "COUNTER") {
      if (toks.size() != 3) {
        throw ParseError(fmt::format("line {}: malformed COUNTER line", line_no));
      }
      TaskTrace& t = find_task(toks[1], line_no);
      const auto eq = toks[2].find('=');
      const auto dot = toks[2].find('.');
      if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ParseError(fmt::format("line {}: malformed counter '{}'", line_no, toks[2]));
      }
      const std::string group = toks[2].substr(0, dot);
      const std::string name = toks[2].substr(dot + 1, eq - dot - 1);
      const double value = parse_num(toks[2].substr(eq + 1), line_no, "counter");
      if (group == "PHASE_MS") {
        t.phase_ms[phase_from_name(name)] = value;
      } else if (group == "DATA_MB") {
        if (name == "INPUT" || name == "SHUFFLE_INPUT") {
          t.input_mb = value;
        } else if (name == "MAP_OUTPUT" || name == "WRITE_OUTPUT") {
          t.output_mb = value;
        } else {
          throw ParseError(fmt::format("line {}: unknown DATA_MB counter '{}'", line_no, name));
        }
      } else if (group == "META") {
        if (name != "SPILL_FILES") {
          throw ParseError(fmt::format("line {}: unknown META counter '{}'", line_no, name));
        }
        t.spill_file_count = static_cast<int>(value);
      } else {
        throw ParseError(fmt::format("line {}: unknown counter group '{}'", line_no, group));
      }
    } else {
      ++skipped;
    }
  }

  if (!saw_header) throw ParseError("truncated log: missing JOB START header");
  if (!saw_footer) throw ParseError("truncated log: missing JOB END footer");
  if (skipped_lines) *skipped_lines = skipped;
  return trace;
}

std::vector<std::string> phase_feature_names(Phase phase) {
  switch (phase) {
    case Phase::Read:
    case Phase::Map:
      return {"d_mb"};
    case Phase::Collect:
    case Phase::Spill:
    case Phase::Merge:
      return {"m_mb"};
    case Phase::Shuffle:
      return {"s_mb", "m_t"};
    case Phase::Reduce:
      return {"s_mb"};
    case Phase::Write:
      return {"r_mb"};
  }
  throw InvalidInput("unknown phase");
}

std::vector<PhaseSample> extract_samples(const JobTrace& trace) {
  const int total_mappers = trace.map_task_count();
  std::vector<PhaseSample> samples;
  samples.reserve(trace.tasks.size() * 5);

  for (const TaskTrace& t : trace.tasks) {
    for (const auto& [phase, ms] : t.phase_ms) {
      // A lone under-threshold spill file means the merge never executed.
      if (phase == Phase::Merge && t.spill_file_count == 1) continue;
      PhaseSample s;
      s.phase = phase;
      s.target_ms = ms;
      s.job_id = trace.job_id;
      switch (phase) {
        case Phase::Read:
        case Phase::Map:
          s.features = {t.input_mb};
          break;
        case Phase::Collect:
        case Phase::Spill:
        case Phase::Merge:
          s.features = {t.output_mb};
          break;
        case Phase::Shuffle:
          s.features = {t.input_mb, static_cast<double>(total_mappers)};
          break;
        case Phase::Reduce:
          s.features = {t.input_mb};
          break;
        case Phase::Write:
          s.features = {t.output_mb};
          break;
      }
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

}  // namespace mrperf
