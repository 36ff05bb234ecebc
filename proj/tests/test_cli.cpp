#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "sentinel/cli.hpp"
#include "sentinel/experiments.hpp"
#include "sentinel/io.hpp"

using namespace sentinel;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("gen writes the requested number of rows") {
  const auto dir = fixture::temp_dir("cli_gen");
  const auto path = (dir / "self.csv").string();
  const auto r = run({"gen", "sine", "--amp", "1", "--freq", "1", "--dt", "0.01", "--n", "1000", "-o", path});
  REQUIRE(r.code == kExitNormal);
  const auto text = fixture::slurp(path);
  CHECK(count_lines(text) == 1001);  // header + rows
  CHECK(text.rfind("time,value\n0,0\n", 0) == 0);
  CHECK(read_series(path).size() == 1000);

  const auto motor = (dir / "motor.csv").string();
  CHECK(run({"gen", "motor", "--loads", "0,0.5", "--duration", "0.1", "--broken-bar", "--paired", "-o", motor}).code ==
        kExitNormal);
  const auto [u, y] = read_paired_series(motor);
  CHECK(u.size() == 200);
  CHECK(u.dt == doctest::Approx(1e-3));
  CHECK(u.samples[199] == doctest::Approx(0.022));

  const auto staged = (dir / "staged.csv").string();
  CHECK(run({"gen", "motor", "--stage", "0.05:2:0.01", "--stage", "0.05:3:0.02", "-o", staged}).code == 0);
  CHECK(read_series(staged).size() == 100);
}

TEST_CASE("immune pipeline: training data is normal") {
  const auto dir = fixture::temp_dir("cli_immune");
  const auto self = (dir / "self.csv").string(), det = (dir / "det.json").string();
  REQUIRE(run({"gen", "sine", "--amp", "1", "--freq", "1", "--dt", "0.01", "--n", "1000", "-o", self}).code == 0);
  const auto t = run({"train-immune", "--self", self, "--bits", "8", "--window", "7", "--md", "0.2",
                      "--detectors", "30", "--seed", "1", "-o", det});
  REQUIRE(t.code == kExitNormal);
  CHECK(t.out.find("generated 30 detectors") != std::string::npos);

  const auto m = run({"monitor-immune", "--in", self, "--model", det});
  CHECK(m.code == kExitNormal);
  CHECK(m.out.find("verdict: normal") != std::string::npos);
  CHECK(fixture::slurp(dir / "self.events.csv") == "window_index,detector_id,distance\n");
  const auto report = read_json(dir / "self.report.json");
  CHECK(report["verdict"] == "normal");
  CHECK(report["summary"]["total_events"] == 0);
  CHECK(report["config"]["params"]["d"] == 30);
  CHECK(report["config"]["encoding"]["window"] == 7);

  // The persisted model monitors exactly like the in-memory one.
  const auto comp = (dir / "comp.csv").string();
  REQUIRE(run({"gen", "composite", "--n", "1000", "-o", comp}).code == 0);
  const auto cm = run({"monitor-immune", "--in", comp, "--model", det, "--report",
                       (dir / "comp.json").string(), "--events", (dir / "comp_events.csv").string()});
  const auto series = read_series(comp);
  const auto cfg = fit_encoding(read_series(self), 8, 7, false);
  ImmuneParams p;
  p.seed = 1;
  const auto ds = generate_detectors(make_windows(read_series(self), cfg), p, cfg);
  const auto direct = monitor(series, ds);
  CHECK(cm.code == (direct.abnormal() ? kExitFault : kExitNormal));
  CHECK(fixture::slurp(dir / "comp_events.csv") == immune_events_csv(direct));
}

TEST_CASE("immune pipeline: a novel signal is a fault") {
  const auto dir = fixture::temp_dir("cli_immune_fault");
  const auto self = (dir / "self.csv").string(), det = (dir / "det.json").string(),
             odd = (dir / "odd.csv").string();
  REQUIRE(run({"gen", "sine", "-o", self}).code == 0);
  REQUIRE(run({"train-immune", "--self", self, "--seed", "2", "-o", det}).code == 0);
  REQUIRE(run({"gen", "composite", "-o", odd}).code == 0);
  const auto m = run({"monitor-immune", "--in", odd, "--model", det, "--stage-lengths", "500,500"});
  CHECK(m.code == kExitFault);
  const auto report = read_json(dir / "odd.report.json");
  CHECK(report["verdict"] == "fault");
  CHECK(report["summary"]["stage_events"].size() == 2);

  const auto text = run({"report", "--in", (dir / "odd.report.json").string(), "--plot",
                         (dir / "plot.csv").string()});
  CHECK(text.code == kExitNormal);
  CHECK(text.out.find("verdict:  fault") != std::string::npos);
  CHECK(fixture::slurp(dir / "plot.csv").rfind("x,y\n", 0) == 0);
  CHECK(count_lines(fixture::slurp(dir / "plot.csv")) ==
        report["summary"]["total_events"].get<std::size_t>() + 1);
}

TEST_CASE("grammar pipeline") {
  const auto dir = fixture::temp_dir("cli_grammar");
  const auto normal = (dir / "normal.csv").string(), faulty = (dir / "faulty.csv").string(),
             model = (dir / "g.json").string();
  REQUIRE(run({"gen", "motor", "--loads", "0.25,0.5,0.75", "--duration", "1", "--paired", "-o", normal}).code == 0);
  REQUIRE(run({"gen", "motor", "--loads", "0.5,1.0", "--duration", "1", "--broken-bar", "--paired", "-o", faulty})
              .code == 0);
  REQUIRE(run({"train-grammar", "--in", normal, "--input-bits", "2", "--output-bits", "5",
               "--max-depth", "4", "-o", model})
              .code == kExitNormal);

  const auto ok = run({"monitor-grammar", "--model", model, "--in", normal, "--threshold", "10"});
  CHECK(ok.code == kExitNormal);

  const auto bad = run({"monitor-grammar", "--model", model, "--in", faulty, "--threshold", "10",
                        "--stages-from-input"});
  CHECK(bad.code == kExitFault);
  const auto report = read_json(dir / "faulty.report.json");
  CHECK(report["summary"]["total_events"].get<int>() >= 1);
  CHECK(report["config"]["threshold"] == 10.0);
  CHECK(report["config"]["word_length"] == 50);
  CHECK(report["summary"]["stage_mean_distance"].size() == 2);
  const auto events = fixture::slurp(dir / "faulty.events.csv");
  CHECK(events.rfind("segment_index,distance,fault\n", 0) == 0);
  CHECK(count_lines(events) == 2000 / 50 + 1);

  const auto text = run({"report", "--in", (dir / "faulty.report.json").string(), "--text",
                         (dir / "faulty.txt").string()});
  CHECK(text.code == 0);
  CHECK(fixture::slurp(dir / "faulty.txt").find("engine:   grammar") != std::string::npos);
}

TEST_CASE("usage and artifact errors exit with 1") {
  const auto dir = fixture::temp_dir("cli_errors");
  CHECK(run({}).code == kExitError);
  CHECK(run({"frobnicate"}).code == kExitError);
  CHECK(run({"gen", "square", "-o", (dir / "x.csv").string()}).code == kExitError);
  CHECK(run({"gen", "sine", "--n", "ten", "-o", (dir / "x.csv").string()}).code == kExitError);
  CHECK(run({"gen", "sine"}).code == kExitError);
  CHECK(run({"gen", "sine", "--dt", "0", "-o", (dir / "x.csv").string()}).code == kExitError);
  CHECK(run({"--help"}).code == kExitNormal);

  const auto self = (dir / "self.csv").string();
  REQUIRE(run({"gen", "sine", "-o", self}).code == 0);
  CHECK(run({"train-immune", "--self", self, "-o", (dir / "d.json").string()}).code == kExitError);  // no seed
  CHECK(run({"monitor-immune", "--in", self, "--model", (dir / "missing.json").string()}).code == kExitError);
  write_text(dir / "corrupt.json", "{ not json");
  CHECK(run({"monitor-immune", "--in", self, "--model", (dir / "corrupt.json").string()}).code == kExitError);
  write_text(dir / "wrong.json", "{\"encoding\": {}}");
  const auto wrong = run({"monitor-immune", "--in", self, "--model", (dir / "wrong.json").string()});
  CHECK(wrong.code == kExitError);
  CHECK(wrong.err.find("error:") != std::string::npos);
  CHECK(run({"train-immune", "--self", self, "--seed", "1", "--md", "0.99", "--detectors", "5",
             "--max-attempts", "100", "-o", (dir / "d.json").string()})
            .code == kExitError);
  write_text(dir / "bad.csv", "0,1\n1,x\n");
  const auto parse = run({"train-immune", "--self", (dir / "bad.csv").string(), "--seed", "1", "-o",
                          (dir / "d.json").string()});
  CHECK(parse.code == kExitError);
  CHECK(parse.err.find("line 2") != std::string::npos);
}

TEST_CASE("experiments are byte-identical across runs") {
  for (const std::string name : {"sine-suite", "motor-suite"}) {
    const auto a = fixture::temp_dir("cli_exp_a"), b = fixture::temp_dir("cli_exp_b");
    REQUIRE(run({"experiment", name, "--out-dir", a.string(), "--seed", "3"}).code == kExitNormal);
    REQUIRE(run({"experiment", name, "--out-dir", b.string(), "--seed", "3"}).code == kExitNormal);
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(a)) {
      const auto other = b / entry.path().filename();
      REQUIRE(std::filesystem::exists(other));
      CHECK(fixture::slurp(entry.path()) == fixture::slurp(other));
      ++files;
    }
    CHECK(files >= 8);
    const auto summary = read_json(a / "summary.json");
    CHECK(summary["experiment"] == name);
  }
}

TEST_CASE("sine-suite summary") {
  const auto dir = fixture::temp_dir("cli_sine_suite");
  const auto summary = run_experiment("sine-suite", dir, 1);
  CHECK(summary["detectors"] == 30);
  CHECK(summary["monitors"]["self"]["events"] == 0);
  CHECK(summary["monitors"]["self"]["verdict"] == "normal");
  CHECK_THROWS_AS(run_experiment("nope", dir, 1), std::invalid_argument);
}

TEST_CASE("motor-suite flags every faulty stage") {
  const auto dir = fixture::temp_dir("cli_motor_suite");
  run_experiment("motor-suite", dir, 1);
  const auto report = read_json(dir / "grammar_scenario_b.report.json");
  const auto& faults = report["summary"]["stage_faults"];
  REQUIRE(faults.size() == 4);
  for (const auto& f : faults) CHECK(f.get<int>() >= 1);
  const auto& max = report["summary"]["stage_max_distance"];
  for (const auto& m : max) CHECK(m.get<double>() > 10.0);
}
