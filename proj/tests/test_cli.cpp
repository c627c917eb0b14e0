// End-to-end checks of the sec binary: exit codes, stdout contracts, and
// byte-stable artifacts.  SEC_CLI_PATH and SEC_DATA_DIR come from CMake.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "sec/calibrate.hpp"
#include "sec/corpus.hpp"
#include "sec/image_io.hpp"
#include "sec/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path("/tmp/sec_cli_tests") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt", err_file = dir / "stderr.txt";
    const std::string cmd = std::string(SEC_CLI_PATH) + " " + args + " > " + out_file.string() +
                            " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::string fmt17(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

TEST_CASE("analyze reports the loaded image's SEC verbatim") {
    const fs::path dir = scratch("analyze");
    const fs::path img = dir / "grating.pgm";
    sec::save_image(sec::cosine_grating(1, 32, 32, 3, 0), img.string());

    const RunResult r = run_cli("analyze --image " + img.string() + " --out " + dir.string(), dir);
    CHECK(r.code == 0);
    // stdout must agree bit-for-bit with the library on the round-tripped file.
    const double expected = sec::image_sec(sec::load_image(img.string()), {});
    CHECK(r.out == "SEC " + fmt17(expected) + "\n");
    CHECK(expected == doctest::Approx(3.0).epsilon(1e-3));

    CHECK(fs::exists(dir / "spectrum.csv"));
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("command") == "analyze");
    CHECK(manifest.at("statistic") == "mean");
}

TEST_CASE("analyze variant flags move the centroid the expected way") {
    const fs::path dir = scratch("analyze_variants");
    const fs::path img = dir / "grating.pgm";
    sec::save_image(sec::cosine_grating(1, 32, 32, 3, 0), img.string());
    const std::string base = "analyze --image " + img.string() + " --out " + dir.string();

    const double plain = std::stod(run_cli(base, dir).out.substr(4));
    const double with_dc = std::stod(run_cli(base + " --include-dc", dir).out.substr(4));
    const double median = std::stod(run_cli(base + " --statistic median", dir).out.substr(4));

    CHECK(with_dc < plain);  // the DC bin drags the mean toward radius 0
    CHECK(median == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("missing input file exits with the data-error code") {
    const fs::path dir = scratch("missing");
    const RunResult r = run_cli("analyze --image /nonexistent/img.png", dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("usage mistakes exit with the parse-error code") {
    const fs::path dir = scratch("usage");
    CHECK(run_cli("", dir).code == 1);                                    // no subcommand
    CHECK(run_cli("analyze --image x.png --no-such-flag", dir).code == 1);
    CHECK(run_cli("model-sec --arch perceptron", dir).code == 1);         // bad enum
}

TEST_CASE("model-sec writes one CSV row per seed and prints their mean") {
    const fs::path dir = scratch("model_sec");
    const RunResult r = run_cli("model-sec --arch siren --size S --param 30 --seeds 3 "
                                "--height 16 --width 16 --out " + dir.string(), dir);
    CHECK(r.code == 0);

    double mean = 0.0, ci = 0.0;
    REQUIRE(sscanf(r.out.c_str(), "mean %lf ci95 %lf", &mean, &ci) == 2);
    CHECK(ci >= 0.0);

    std::istringstream csv(slurp(dir / "model_sec.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "seed,sec");
    double sum = 0.0;
    int rows = 0;
    while (std::getline(csv, line) && !line.empty()) {
        sum += std::stod(line.substr(line.find(',') + 1));
        ++rows;
    }
    CHECK(rows == 3);
    CHECK(mean == doctest::Approx(sum / rows).epsilon(1e-12));
}

TEST_CASE("select picks a calibrated parameter for the shipped sample") {
    const fs::path dir = scratch("select");
    const std::string calib_path = std::string(SEC_DATA_DIR) + "/example_calibration.json";
    const std::string image_path = std::string(SEC_DATA_DIR) + "/sample_grating.pgm";

    const RunResult r = run_cli("select --calibration " + calib_path + " --image " + image_path +
                                " --out " + dir.string(), dir);
    CHECK(r.code == 0);

    const double chosen = std::stod(r.out);
    const sec::CalibrationSet calib = sec::load_calibration(calib_path);
    bool known = false;
    for (const sec::CalibrationEntry& e : calib.entries) known |= e.best_param == chosen;
    CHECK(known);

    const json sel = json::parse(slurp(dir / "selection.json"));
    CHECK(sel.at("selected_param") == chosen);
    CHECK(sel.at("target_sec").get<double>() > 0.0);
}

TEST_CASE("match recovers an identical reference exactly") {
    const fs::path dir = scratch("match");
    const RunResult r = run_cli("match --ref-arch siren --ref-size S --ref-param 60 "
                                "--target-arch siren --target-size S --grid 30,60,90 "
                                "--seeds 2 --height 24 --width 24 --out " + dir.string(), dir);
    CHECK(r.code == 0);

    double param = 0.0, err = -1.0;
    REQUIRE(sscanf(r.out.c_str(), "matched_param %lf sec_error %lf", &param, &err) == 2);
    CHECK(param == 60.0);
    CHECK(err == 0.0);

    const json match = json::parse(slurp(dir / "match.json"));
    CHECK(match.at("matched_param") == 60.0);
    CHECK(match.at("grid_exhausted") == false);
}

TEST_CASE("train runs are reproducible byte-for-byte") {
    const fs::path dir = scratch("train");
    const fs::path img = dir / "target.png";
    sec::save_image(sec::blur_ladder(1, 1, 8, 8, 5)[0].image, img.string());

    const std::string common = "train --image " + img.string() +
                               " --arch siren --size S --param 30 --steps 30 --log-every 10 "
                               "--seed 3 --out ";
    const RunResult r1 = run_cli(common + (dir / "a").string(), dir);
    const RunResult r2 = run_cli(common + (dir / "b").string(), dir);
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(r1.out == r2.out);

    int step = -1;
    double loss = -1.0, psnr = 0.0;
    REQUIRE(sscanf(r1.out.c_str(), "final step %d loss %lf psnr %lf", &step, &loss, &psnr) == 3);
    CHECK(step == 30);
    CHECK(loss >= 0.0);

    CHECK(slurp(dir / "a" / "trace.csv") == slurp(dir / "b" / "trace.csv"));
    CHECK(slurp(dir / "a" / "checkpoint.json") == slurp(dir / "b" / "checkpoint.json"));
    CHECK(slurp(dir / "a" / "render.png") == slurp(dir / "b" / "render.png"));
}

TEST_CASE("calibrate on a tiny synthetic ladder emits a loadable set") {
    const fs::path dir = scratch("calibrate");
    const RunResult r = run_cli("calibrate --arch siren --size S --ladder 2 "
                                "--ladder-channels 1 --ladder-height 12 --ladder-width 12 "
                                "--grid 30,60 --steps 12 --log-every 6 --out " + dir.string(),
                                dir);
    CHECK(r.code == 0);

    const sec::CalibrationSet calib = sec::load_calibration((dir / "calibration.json").string());
    REQUIRE(calib.entries.size() == 2);
    for (const sec::CalibrationEntry& e : calib.entries) {
        CHECK((e.best_param == 30.0 || e.best_param == 60.0));
        CHECK(e.sec > 0.0);
    }
    CHECK(r.out.find("-> param") != std::string::npos);
}

TEST_CASE("fresh picks a value from the given grid") {
    const fs::path dir = scratch("fresh");
    const fs::path img = dir / "grating.pgm";
    sec::save_image(sec::cosine_grating(1, 16, 16, 3, 0), img.string());

    const RunResult r = run_cli("fresh --image " + img.string() + " --arch siren --size S "
                                "--grid 30,90 --seeds 1 --out " + dir.string(), dir);
    CHECK(r.code == 0);
    const double chosen = std::stod(r.out);
    CHECK((chosen == 30.0 || chosen == 90.0));
    const json fresh = json::parse(slurp(dir / "fresh.json"));
    CHECK(fresh.at("selected_param") == chosen);
}

TEST_CASE("benchmark spectral suite passes and records a summary") {
    const fs::path dir = scratch("benchmark");
    const RunResult r = run_cli("benchmark --suite spectral --out " + dir.string(), dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("criterion 1: PASS") != std::string::npos);
    CHECK(r.out.find("criterion 2: PASS") != std::string::npos);
    CHECK(r.out.find("2/2 criteria passed") != std::string::npos);

    const json summary = json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("all_pass") == true);
    CHECK(summary.at("criteria").size() == 2);
}
