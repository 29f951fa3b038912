#include "doctest.h"

#include <cmath>

#include "qlink/errors.hpp"
#include "qlink/scenario.hpp"

using namespace qlink;
using namespace qlink::scenario;

TEST_CASE("scenario parsing") {
    SUBCASE("empty text on top of a preset keeps the preset") {
        const Scenario s = parse_scenario("", preset("fig3a"));
        CHECK(s.name == "fig3a");
        CHECK(s.divergence_urad == 5.0);
        CHECK(s.total_ground_distance_km == 20000.0);
        CHECK(s.rep_memory_efficiency == 0.9);
        CHECK(s.rep_qnd_efficiency == 0.5);
        CHECK(s.rep_source_rate_mhz == 20.0);
        CHECK(s.detector_efficiency == 0.9);
    }
    SUBCASE("comments, blanks and overrides") {
        const Scenario s = parse_scenario("# comment\n\n"
                                          "beam.divergence_urad = 2.5\n"
                                          "geometry.altitude_km = 550  # trailing comment\n",
                                          preset("fig3a"));
        CHECK(s.divergence_urad == 2.5);
        CHECK(s.altitude_km == 550.0);
    }
    SUBCASE("malformed lines raise ParseError") {
        CHECK_THROWS_AS(parse_scenario("beam.divergence_urad\n"), ParseError);
        CHECK_THROWS_AS(parse_scenario("beam.divergence_urad = abc\n"), ParseError);
        CHECK_THROWS_AS(parse_scenario("beam.divergence_urad =\n"), ParseError);
    }
    SUBCASE("unknown keys are hard errors") {
        CHECK_THROWS_AS(parse_scenario("beam.divergence_mrad = 1\n"), ValidationError);
    }
    SUBCASE("invariant violations name the invariant") {
        try {
            parse_scenario("maqkd.memory_efficiency = 1.3\n");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            const std::string message = e.what();
            CHECK(message.find("maqkd.memory_efficiency") != std::string::npos);
            CHECK(message.find("[0, 1]") != std::string::npos);
        }
    }
}

TEST_CASE("presets") {
    SUBCASE("every bundled preset loads and validates") {
        for (const auto& name : preset_names()) {
            CHECK_NOTHROW(preset(name).validate());
        }
    }
    SUBCASE("table1-downlink carries the published parameter column") {
        const Scenario s = preset("table1-downlink");
        CHECK(s.altitude_km == 400.0);
        CHECK(s.sender_radius_m == 0.15);
        CHECK(s.receiver_radius_m == 0.5);
        CHECK(s.divergence_urad == 10.0);
        CHECK(s.ma_memory_efficiency == 0.8);
        CHECK(s.detector_efficiency == 0.7);
    }
    SUBCASE("unknown preset raises UnknownFigure") {
        CHECK_THROWS_AS(preset("fig9z"), UnknownFigure);
    }
}

TEST_CASE("grids") {
    const auto linear = make_grid(0.3, 1.0, 50, SweepScale::Linear);
    REQUIRE(linear.size() == 50);
    CHECK(linear.front() == 0.3);
    CHECK(linear.back() == 1.0);
    CHECK(linear[14] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(linear[42] == doctest::Approx(0.9).epsilon(1e-12));

    const auto log = make_grid(1e-4, 1.0, 50, SweepScale::Log);
    REQUIRE(log.size() == 50);
    CHECK(log.front() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(log.back() == 1.0);
    CHECK(log[1] / log[0] == doctest::Approx(log[25] / log[24]).epsilon(1e-9));
}

TEST_CASE("run shapes") {
    SUBCASE("single-point sweep yields a single row") {
        Scenario s = preset("fig3a");
        s.sweep_points = 1;
        s.sweep_min = s.sweep_max = 20000.0;
        const auto t = run(s);
        REQUIRE(t.rows.size() == 1);
        CHECK(t.rows[0][0] == 20000.0);
        CHECK(t.columns.size() == t.units.size());
    }
    SUBCASE("fig5 column set matches the published comparison") {
        Scenario s = preset("fig5");
        s.sweep_points = 3;
        const auto t = run(s);
        REQUIRE(t.columns.size() == 6);
        CHECK(t.columns[0] == "L_km");
        CHECK(t.columns[1] == "r_e91");
        CHECK(t.columns[2] == "r_uplink");
        CHECK(t.columns[3] == "r_down_m1_n1");
        CHECK(t.columns[4] == "r_down_m1_n1000");
        CHECK(t.columns[5] == "r_down_m100_n1000");
        REQUIRE(t.rows.size() == 3);
        for (const auto& row : t.rows) CHECK(row.size() == 6);
    }
    SUBCASE("fig6a produces one loss column per divergence") {
        Scenario s = preset("fig6a");
        s.sweep_points = 5;
        const auto t = run(s);
        REQUIRE(t.columns.size() == 4);
        CHECK(t.columns[1] == "loss_db_1urad");
        CHECK(t.columns[2] == "loss_db_5urad");
        CHECK(t.columns[3] == "loss_db_10urad");
        // more divergence, more loss
        for (const auto& row : t.rows) {
            CHECK(row[1] < row[2]);
            CHECK(row[2] < row[3]);
        }
    }
    SUBCASE("maps are rectangular with nan-free zero cells") {
        Scenario s = preset("fig4a");
        s.sweep_points = 4;
        s.map_eta_points = 3;
        const auto t = run(s);
        REQUIRE(t.columns.size() == 4);
        REQUIRE(t.rows.size() == 4);
        for (const auto& row : t.rows) {
            for (const double cell : row) CHECK(!std::isnan(cell));
        }
    }
    SUBCASE("degenerate sweep points become nan rows without aborting") {
        Scenario s = preset("fig3a");
        s.sweep_min = 20000.0;
        s.sweep_max = 60000.0;  // beyond the horizon for the end links
        s.sweep_points = 3;
        const auto t = run(s);
        REQUIRE(t.rows.size() == 3);
        CHECK(std::isfinite(t.rows[0][4]));
        CHECK(std::isnan(t.rows[2][4]));
        const std::string csv = t.to_csv();
        CHECK(csv.find("nan") != std::string::npos);
    }
}

TEST_CASE("determinism and serialization") {
    SUBCASE("identical scenarios produce byte-identical tables") {
        Scenario s = preset("fig5");
        s.sweep_points = 8;
        const std::string a = run(s).to_csv();
        const std::string b = run(s).to_csv();
        CHECK(a == b);
        const std::string j1 = run(s).to_json();
        const std::string j2 = run(s).to_json();
        CHECK(j1 == j2);
    }
    SUBCASE("parallel execution does not change bytes") {
        Scenario s = preset("fig3a");
        s.sweep_points = 12;
        CHECK(run(s, 1).to_csv() == run(s, 4).to_csv());
    }
    SUBCASE("metadata carries the scenario hash and versions") {
        Scenario s = preset("fig6b");
        s.sweep_points = 2;
        const auto t = run(s);
        const std::string csv = t.to_csv();
        CHECK(csv.rfind("# metadata: tool=qlink ", 0) == 0);
        CHECK(csv.find("ledger=") != std::string::npos);
        // different scenario, different hash
        Scenario other = s;
        other.divergence_urad = 3.0;
        CHECK(run(other).scenario_hash != t.scenario_hash);
    }
    SUBCASE("units row follows the header row") {
        Scenario s = preset("fig6a");
        s.sweep_points = 2;
        const std::string csv = run(s).to_csv();
        const auto first_newline = csv.find('\n');
        const auto second_newline = csv.find('\n', first_newline + 1);
        const auto third_newline = csv.find('\n', second_newline + 1);
        const std::string header = csv.substr(first_newline + 1, second_newline - first_newline - 1);
        const std::string units = csv.substr(second_newline + 1, third_newline - second_newline - 1);
        CHECK(header == "slant_km,loss_db_1urad,loss_db_5urad,loss_db_10urad");
        CHECK(units == "km,dB,dB,dB");
    }
}

TEST_CASE("reproduce") {
    SUBCASE("unknown figure id") {
        CHECK_THROWS_AS(reproduce("fig7"), UnknownFigure);
    }
    SUBCASE("fig3a reports the four architectures plus the mode requirement") {
        Scenario s = preset("fig3a");
        s.sweep_points = 2;
        const auto t = run(s);
        REQUIRE(t.columns.size() == 7);
        CHECK(t.columns[1] == "t_dlcz_single");
        CHECK(t.columns[4] == "t_space_qnd");
        CHECK(t.columns[5] == "eta_tr_max");
        CHECK(t.columns[6] == "n_modes_required");
        CHECK(t.rows[1][0] == 20000.0);
    }
}
