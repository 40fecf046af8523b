#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "supercliff/report.h"
#include "supercliff/rng.h"

namespace fs = std::filesystem;
using namespace supercliff;

namespace {

// The ctest harness exports SUPERCLIFF_CLI with the binary path.
std::string cli_path() {
    const char *p = std::getenv("SUPERCLIFF_CLI");
    return p ? p : "";
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("supercliff-cli-" + std::to_string(splitmix64(std::random_device{}())));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string &args) {
    std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli exit codes and outputs") {
    if (cli_path().empty()) {
        MESSAGE("SUPERCLIFF_CLI not set; skipping CLI tests");
        return;
    }

    SUBCASE("usage errors exit with 2") {
        CHECK(run("definitely-not-a-subcommand") == 2);
        CHECK(run("entropy-sweep") == 2);  // no --n
        CHECK(run("entropy-sweep --n 50 --realizations 2 --horizon 5") == 2);  // 40 | N fails
        CHECK(run("otoc --n 40 --v-gates bogus@1 --realizations 2 --horizon 4") == 2);
        CHECK(run("oracle-check --max-n 13") == 2);
    }

    SUBCASE("help exits cleanly") {
        CHECK(run("--help") == 0);
    }

    SUBCASE("sweep outputs are deterministic and reproducible from the manifest") {
        TempDir a, b, c;
        std::string base =
            "entropy-sweep --n 40 --m 1/4 --realizations 6 --seed 11 --epsilon 3 "
            "--horizon 60 --cadence 1 --threads 2 --out-dir ";
        REQUIRE(run(base + a.path.string()) == 0);
        REQUIRE(run(base + b.path.string()) == 0);
        for (const char *name : {"entropy_N40.csv", "scrambling_times.csv"}) {
            CHECK(report::read_file(a.path / name) == report::read_file(b.path / name));
        }
        // replay from the manifest alone
        REQUIRE(run("entropy-sweep --config " + (a.path / "manifest.json").string() +
                    " --out-dir " + c.path.string()) == 0);
        CHECK(report::read_file(a.path / "entropy_N40.csv") ==
              report::read_file(c.path / "entropy_N40.csv"));
        CHECK(report::read_file(a.path / "scrambling_times.csv") ==
              report::read_file(c.path / "scrambling_times.csv"));
    }

    SUBCASE("fit on sweep outputs emits the documented JSON") {
        TempDir dir;
        REQUIRE(run("entropy-sweep --n 40 --n 80 --realizations 6 --seed 11 --epsilon 3 "
                    "--horizon 80 --cadence 1 --threads 2 --out-dir " +
                    dir.path.string()) == 0);
        REQUIRE(run("fit " + (dir.path / "entropy_N40.csv").string() + " " +
                    (dir.path / "entropy_N80.csv").string() + " --tstar " +
                    (dir.path / "scrambling_times.csv").string() +
                    " --window-lo 5 --out-dir " + dir.path.string()) == 0);
        std::string fit = report::read_file(dir.path / "fit.json");
        CHECK(fit.find("\"lambda\"") != std::string::npos);
        CHECK(fit.find("\"a\"") != std::string::npos);
        CHECK(fit.find("supercliff-fit") != std::string::npos);

        // a single system size cannot support the scaling fit
        TempDir single;
        REQUIRE(run("entropy-sweep --n 40 --realizations 6 --seed 11 --epsilon 3 --horizon 80 "
                    "--cadence 1 --threads 2 --out-dir " +
                    single.path.string()) == 0);
        CHECK(run("fit " + (single.path / "entropy_N40.csv").string() + " --tstar " +
                  (single.path / "scrambling_times.csv").string() + " --window-lo 5 --out-dir " +
                  single.path.string()) == 2);
    }

    SUBCASE("otoc run writes plateau metadata and deterministic traces") {
        TempDir a, b;
        std::string base =
            "otoc --n 40 --v-gates C3 --w0 zeros --realizations 5 --seed 4 "
            "--horizon 8 --cadence 4 --threads 2 --out-dir ";
        REQUIRE(run(base + a.path.string()) == 0);
        REQUIRE(run(base + b.path.string()) == 0);
        CHECK(report::read_file(a.path / "otoc_N40.csv") ==
              report::read_file(b.path / "otoc_N40.csv"));
        report::RunMeta meta = report::read_run_meta(a.path / "otoc_N40.meta.json");
        REQUIRE(meta.plateau.has_value());
        CHECK(*meta.plateau == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("w0 site lists and bit strings are accepted") {
        TempDir dir;
        CHECK(run("otoc --n 40 --w0 1 --realizations 2 --horizon 4 --threads 2 --out-dir " +
                  dir.path.string()) == 0);
        CHECK(run("otoc --n 40 --w0 zeros --realizations 2 --horizon 4 --threads 2 --out-dir " +
                  dir.path.string()) == 0);
        CHECK(run("otoc --n 40 --w0 99 --realizations 2 --horizon 4 --threads 2 --out-dir " +
                  dir.path.string()) == 2);
    }

    SUBCASE("oracle-check passes at small sizes") {
        CHECK(run("oracle-check --max-n 4 --cases 4 --len 20") == 0);
    }
}
