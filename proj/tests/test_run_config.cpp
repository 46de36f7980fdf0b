#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "augury/run_config.hpp"

#include <string>

using namespace augury;

TEST_CASE("minimal config fills documented defaults") {
    const RunConfig config = parse_config("scenario = two-block\nk = 0\n");
    CHECK(config.scenario == "two-block");
    CHECK(config.k == 0);
    CHECK(config.mode == TransferMode::APIC);
    CHECK(config.law == ContactLaw::Friction);
    CHECK(config.mu == 0.0);
    CHECK(config.iterations == 1);
    CHECK(!config.dt_override.has_value());
    CHECK(!config.end_time.has_value());
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
    const RunConfig config = parse_config(
        "# impact study\n"
        "\n"
        "scenario = ramp   # which experiment\n"
        "  h =  0.25\n"
        "mu=0.2\n"
        "mode = pic\n");
    CHECK(config.scenario == "ramp");
    CHECK(config.h == 0.25);
    CHECK(config.mu == 0.2);
    CHECK(config.mode == TransferMode::PIC);
}

TEST_CASE("sticky law implies zero iterations unless contradicted") {
    const RunConfig config = parse_config("scenario = two-block\nlaw = sticky\n");
    CHECK(config.law == ContactLaw::Sticky);
    CHECK(config.iterations == 0);

    CHECK_THROWS_AS(parse_config("scenario = two-block\nlaw = sticky\niterations = 2\n"),
                    InvalidInput);
    CHECK_THROWS_AS(parse_config("scenario = two-block\nlaw = separation\niterations = 0\n"),
                    InvalidInput);
}

TEST_CASE("validation failures name the problem") {
    SUBCASE("missing scenario") {
        CHECK_THROWS_WITH_AS(parse_config("k = 0\n"), "config: scenario is required",
                             InvalidInput);
    }
    SUBCASE("unknown key carries key and line") {
        try {
            parse_config("scenario = ramp\nwhatever = 3\n");
            FAIL("expected a throw");
        } catch (const InvalidInput& e) {
            const std::string msg = e.what();
            CHECK(msg.find("whatever") != std::string::npos);
            CHECK(msg.find("line 2") != std::string::npos);
        }
    }
    SUBCASE("type mismatch carries key and line") {
        try {
            parse_config("scenario = ramp\nmu = fast\n");
            FAIL("expected a throw");
        } catch (const InvalidInput& e) {
            const std::string msg = e.what();
            CHECK(msg.find("mu") != std::string::npos);
            CHECK(msg.find("line 2") != std::string::npos);
        }
    }
    SUBCASE("negative mu") {
        CHECK_THROWS_AS(parse_config("scenario = ramp\nmu = -0.1\n"), InvalidInput);
    }
    SUBCASE("bad cadence") {
        CHECK_THROWS_AS(parse_config("scenario = ramp\ndiag_every = 0\n"), InvalidInput);
    }
    SUBCASE("unknown scenario") {
        CHECK_THROWS_AS(parse_config("scenario = wedge\n"), InvalidInput);
    }
    SUBCASE("missing value") {
        CHECK_THROWS_AS(parse_config("scenario =\n"), InvalidInput);
    }
}

TEST_CASE("manifest echoes every resolved field") {
    const RunConfig config = parse_config("scenario = ramp\nh = 0.25\nmu = 0.2\n");
    const std::string manifest = render_manifest(config, 6.25e-6, 6.25e-6, 0.125, 0.266);
    for (const char* key : {"scenario = ramp", "mu = 0.2", "mode = apic", "law = friction",
                            "iterations = 1", "dt = 6.25", "tau = 6.25",
                            "grid_spacing = 0.125", "end_time = 0.266", "diag_every = 10",
                            "snapshot_every = 1000", "seed = 0"}) {
        CHECK(manifest.find(key) != std::string::npos);
    }

    // Byte-stable for identical configs.
    CHECK(manifest == render_manifest(config, 6.25e-6, 6.25e-6, 0.125, 0.266));
}

TEST_CASE("mode and law words round-trip") {
    CHECK(transfer_mode_from(to_string(TransferMode::PIC)) == TransferMode::PIC);
    CHECK(transfer_mode_from(to_string(TransferMode::APIC)) == TransferMode::APIC);
    CHECK(contact_law_from(to_string(ContactLaw::Sticky)) == ContactLaw::Sticky);
    CHECK(contact_law_from(to_string(ContactLaw::Separation)) == ContactLaw::Separation);
    CHECK(contact_law_from(to_string(ContactLaw::Friction)) == ContactLaw::Friction);
    CHECK_THROWS_AS(transfer_mode_from("maglev"), InvalidInput);
    CHECK_THROWS_AS(contact_law_from("welded"), InvalidInput);
}
