#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hamcycle/harness.hpp"
#include "hamcycle/model.hpp"
#include "hamcycle/numeric.hpp"

using namespace hamcycle;

namespace {

SweepRecord record_at(double c, double phat, std::uint64_t trials = 100) {
    SweepRecord r;
    r.c = c;
    r.trials = trials;
    r.phat = phat;
    r.successes = static_cast<std::uint64_t>(std::llround(phat * static_cast<double>(trials)));
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("estimate_prob extremes") {
    const SweepRecord all = estimate_prob(9, 3, 2, 1.0, 50, 11);
    CHECK(all.successes == 50);
    CHECK(all.phat == 1.0);
    CHECK(all.ci_high == 1.0);
    CHECK(all.c == 1.0);
    const SweepRecord none = estimate_prob(9, 3, 2, 0.0, 50, 11);
    CHECK(none.successes == 0);
    CHECK(none.phat == 0.0);
    CHECK(none.ci_low == 0.0);
    CHECK_THROWS_AS(estimate_prob(9, 3, 2, 1.2, 50, 11), RangeError);
    CHECK_THROWS_AS(estimate_prob(9, 3, 2, 0.5, 0, 11), RangeError);
    CHECK_THROWS_AS(estimate_prob(9, 3, 1, 0.5, 10, 11), DivisibilityError);
}

TEST_CASE("estimate_prob is monotone in p with separated intervals") {
    const double e = std::exp(1.0);
    const SweepRecord lo = estimate_prob(12, 4, 3, 0.3 * e / 12.0, 200, 5);
    const SweepRecord hi = estimate_prob(12, 4, 3, 3.0 * e / 12.0, 200, 5);
    CHECK(hi.phat > lo.phat);
    CHECK(hi.ci_low > lo.ci_high);
}

TEST_CASE("serial and parallel estimates coincide") {
    const SweepRecord serial = estimate_prob_serial(9, 3, 2, 0.3, 64, 123);
    for (int jobs : {1, 2, 8}) CHECK(estimate_prob(9, 3, 2, 0.3, 64, 123, jobs) == serial);
}

TEST_CASE("sweep: serial, jobs 1 and jobs 8 give identical records") {
    SweepSpec spec = preset("tight", 3, 9);
    spec.trials = 40;
    spec.seed = 77;
    const SweepResult serial = sweep_serial(spec);
    for (int jobs : {1, 8}) {
        spec.jobs = jobs;
        const SweepResult par = sweep(spec);
        CHECK(par.records == serial.records);
        std::ostringstream a;
        std::ostringstream b;
        write_sweep_csv(a, spec, par);
        write_sweep_csv(b, spec, serial);
        CHECK(a.str() == b.str());
    }
    spec.coupled = false;
    CHECK(sweep(spec).records == sweep_serial(spec).records);
}

TEST_CASE("coupled trials: success at a smaller p implies success at a larger p") {
    const std::vector<double> grid{0.2, 0.35, 0.5, 0.7};
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::uint64_t seed = trial_seed(2024, 0, i);
        bool previous = false;
        for (double p : grid) {
            const bool now = has_tight_hamilton(sample({8, 3, p, seed})).found;
            if (previous) CHECK(now);
            previous = now;
        }
    }
}

TEST_CASE("coupled sweep is monotone in c") {
    SweepSpec spec = preset("tight", 3, 8);
    spec.trials = 60;
    spec.seed = 3;
    const SweepResult res = sweep(spec);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        CHECK(res.records[i].successes >= res.records[i - 1].successes);
    }
}

TEST_CASE("trial seeds are distinct across grid index and trial") {
    CHECK(trial_seed(1, 0, 0) != trial_seed(1, 0, 1));
    CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
    CHECK(trial_seed(1, 0, 0) != trial_seed(2, 0, 0));
    CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
}

TEST_CASE("presets") {
    const SweepSpec tight = preset("tight", 4, 12);
    CHECK(tight.ell == 3);
    CHECK(tight.scaling.exponent == 1);
    CHECK_FALSE(tight.scaling.log_factor);
    CHECK(tight.divisor == 1);
    CHECK(*tight.reference_c == doctest::Approx(std::exp(1.0)));
    CHECK(tight.c_grid == default_c_grid());
    CHECK(default_c_grid().size() == 12);
    CHECK(default_c_grid().back() == 6.0);

    const SweepSpec ell2 = preset("ell2", 5, 9);
    CHECK(ell2.ell == 2);
    CHECK(ell2.scaling.exponent == 3);
    CHECK(ell2.divisor == 3);

    SweepSpec loose = preset("loose-k", 4, 8);
    CHECK(loose.divisor == 6);
    CHECK(loose.scaling.exponent == 3);
    CHECK(loose.scaling.log_factor);
    loose.trials = 1;
    CHECK_THROWS_AS(validate_sweep(loose), DivisibilityError);

    const SweepSpec k3 = preset("loose-k3", 3, 8);
    CHECK(k3.divisor == 4);
    CHECK(k3.scaling.exponent == 2);
    CHECK_FALSE(k3.reference_c.has_value());

    const SweepSpec mid = preset("mid-ell", 6, 12, 4);
    CHECK(mid.ell == 4);
    CHECK(mid.scaling.exponent == 2);
    CHECK(mid.divisor == 2);

    CHECK_THROWS_AS(preset("nope", 4, 12), RangeError);
    CHECK_THROWS_AS(preset("loose-k3", 4, 12), RangeError);
    CHECK_THROWS_AS(preset("mid-ell", 4, 12, 4), RangeError);
    CHECK_THROWS_AS(preset("mid-ell", 5, 12, 2), RangeError);
}

TEST_CASE("validate_sweep") {
    SweepSpec spec = preset("tight", 3, 6);
    spec.trials = 10;
    validate_sweep(spec);
    spec.c_grid = {2.0, 1.0};
    CHECK_THROWS_AS(validate_sweep(spec), RangeError);
    spec.c_grid = {1.0, 7.0};
    CHECK_THROWS_AS(validate_sweep(spec), RangeError);
    spec.c_grid = {1.0};
    spec.trials = 0;
    CHECK_THROWS_AS(validate_sweep(spec), RangeError);
}

TEST_CASE("locate_crossing") {
    // Entire grid at p = 1: first point is already above 1/2.
    SweepSpec spec;
    spec.n = 8;
    spec.k = 3;
    spec.ell = 2;
    spec.scaling = {0, false};
    spec.c_grid = {1.0, 1.0};
    spec.trials = 5;
    const SweepResult full = sweep(spec);
    CHECK_FALSE(full.crossing.crossed);

    CHECK_FALSE(locate_crossing({record_at(1, 0.1), record_at(2, 0.3)}).crossed);
    const Crossing sym = locate_crossing({record_at(1, 0.2), record_at(3, 0.8)});
    CHECK(sym.crossed);
    CHECK(sym.c_half == doctest::Approx(2.0));
    const Crossing exact = locate_crossing({record_at(1, 0.2), record_at(2, 0.5), record_at(3, 0.9)});
    CHECK(exact.c_half == 2.0);
    // Clamped endpoints: 0 -> 1/200 and 1 -> 199/200 are symmetric in logit.
    const Crossing clamped = locate_crossing({record_at(4, 0.0), record_at(6, 1.0)});
    CHECK(clamped.c_half == doctest::Approx(5.0));
    const double l0 = std::log(0.1 / 0.9);
    const double l1 = std::log(0.6 / 0.4);
    const Crossing skew = locate_crossing({record_at(1, 0.1), record_at(2, 0.6)});
    CHECK(skew.c_half == doctest::Approx(1.0 - l0 / (l1 - l0)));
}

TEST_CASE("pancyclicity sweep") {
    const auto recs = pancyclicity_sweep(7, 3, {0.0, 1.0}, 20, 9);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].successes == 0);
    CHECK(recs[0].first_missing == std::map<Vertex, std::uint64_t>{{4, 20}});
    CHECK(recs[1].successes == 20);
    CHECK(recs[1].first_missing.empty());
    CHECK(pancyclicity_sweep(7, 3, {0.4, 0.7}, 30, 9, 1) == pancyclicity_sweep(7, 3, {0.4, 0.7}, 30, 9, 8));
    CHECK_THROWS_AS(pancyclicity_sweep(3, 3, {0.5}, 5, 1), TooSmallError);
}

TEST_CASE("CSV and JSON output") {
    SweepSpec spec = preset("tight", 3, 6);
    spec.c_grid = {1.0, 3.0};
    spec.trials = 10;
    spec.seed = 5;
    const SweepResult res = sweep(spec);
    std::ostringstream csv;
    write_sweep_csv(csv, spec, res);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# sweep preset=tight n=6 k=3 ell=2", 0) == 0);
    std::getline(lines, line);
    CHECK(line == kSweepCsvHeader);
    std::getline(lines, line);
    CHECK(line.rfind("6,3,2,1,0.1666666667,10,", 0) == 0);
    CHECK(line.substr(line.rfind(',') + 1) == "5");
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line.rfind("# crossing crossed=", 0) == 0);
    CHECK(line.find("reference_c=2.718281828") != std::string::npos);
    CHECK(describe_config(spec).find("jobs") == std::string::npos);

    std::ostringstream js;
    write_sweep_json(js, spec, res);
    const auto doc = nlohmann::json::parse(js.str());
    REQUIRE(doc["records"].size() == 2);
    CHECK(doc["records"][1]["c"] == 3.0);
    CHECK(doc["records"][1]["successes"] == res.records[1].successes);
    CHECK(doc["crossing"]["crossed"] == res.crossing.crossed);

    std::ostringstream pcsv;
    PancyclicRecord rec;
    rec.n = 6;
    rec.k = 3;
    rec.p = 0.5;
    rec.trials = 4;
    rec.successes = 1;
    rec.phat = 0.25;
    rec.seed = 2;
    rec.first_missing = {{4, 2}, {6, 1}};
    write_pancyclic_csv(pcsv, {rec});
    CHECK(pcsv.str() == "n,k,p,trials,successes,phat,ci_low,ci_high,seed,first_missing\n"
                        "6,3,0.5,4,1,0.25,0,0,2,4:2;6:1\n");
    std::ostringstream pjs;
    write_pancyclic_json(pjs, {rec});
    CHECK(nlohmann::json::parse(pjs.str())[0]["first_missing"]["6"] == 1);
}

TEST_CASE("write_file_atomic replaces the target") {
    const auto dir = std::filesystem::temp_directory_path() / "hamcycle_atomic_test";
    std::filesystem::create_directories(dir);
    const auto target = dir / "out.csv";
    write_file_atomic(target.string(), "first\n");
    write_file_atomic(target.string(), "second\n");
    CHECK(slurp(target) == "second\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    CHECK_THROWS_AS(write_file_atomic((dir / "missing" / "x.csv").string(), "x"), InvalidInputError);
    std::filesystem::remove_all(dir);
}

}
