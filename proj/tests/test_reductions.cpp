#include <doctest.h>

#include <cmath>

#include "mixhk/graph_gen.hpp"
#include "mixhk/reference_models.hpp"
#include "mixhk/verify.hpp"

using namespace mixhk;

namespace {

OpinionState make_state_1d(const std::vector<double>& xs) {
    OpinionState s(static_cast<int>(xs.size()), 1, 0);
    for (std::size_t i = 0; i < xs.size(); ++i) s.at(static_cast<int>(i), 0) = xs[i];
    return s;
}

}  // namespace

TEST_CASE("deffuant reference moves the drawn pair at rate mu") {
    const OpinionState s = make_state_1d({0.0, 0.5, 3.0});
    const OpinionState next = deffuant_reference_step(s, {0, 1}, 0.25, 1.0);
    CHECK(next.at(0, 0) == 0.125);
    CHECK(next.at(1, 0) == 0.375);
    CHECK(next.at(2, 0) == 3.0);  // untouched
}

TEST_CASE("deffuant reference ignores pairs beyond the threshold") {
    const OpinionState s = make_state_1d({0.0, 2.0});
    const OpinionState next = deffuant_reference_step(s, {0, 1}, 0.5, 1.0);
    CHECK(next.values == s.values);
}

TEST_CASE("sync reference reproduces the confidence-line update") {
    const OpinionState next = sync_hk_reference_step(make_state_1d({0.0, 0.6, 1.2}), 0.7);
    CHECK(std::abs(next.at(0, 0) - 0.3) <= 1e-15);
    CHECK(std::abs(next.at(1, 0) - 0.6) <= 1e-15);
    CHECK(std::abs(next.at(2, 0) - 0.9) <= 1e-15);
}

TEST_CASE("async reference moves only the selected agent") {
    const OpinionState s = make_state_1d({0.0, 0.4, 0.8});
    const OpinionState next = async_hk_reference_step(s, 1, 0.5);
    CHECK(next.at(0, 0) == 0.0);
    CHECK(next.at(1, 0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(next.at(2, 0) == 0.8);

    const OpinionState end = async_hk_reference_step(s, 0, 0.5);
    CHECK(end.at(0, 0) == 0.2);  // mean of {0, 0.4}
}

TEST_CASE("engine trajectories coincide with the reference models") {
    CHECK(verify::reduction_gap_deffuant(path_graph(6), 0.25, 0.4, 120, 3) <= 1e-12);
    CHECK(verify::reduction_gap_deffuant(SimpleGraph::complete(5), 0.5, 0.4, 120, 4) <= 1e-12);
    CHECK(verify::reduction_gap_deffuant(SimpleGraph::complete(5), 0.1, 0.4, 120, 5) <= 1e-12);
    CHECK(verify::reduction_gap_sync(8, 1, 0.3, 60, 6) <= 1e-12);
    CHECK(verify::reduction_gap_sync(6, 2, 0.3, 60, 7) <= 1e-12);
    CHECK(verify::reduction_gap_async(8, 0.3, 400, 8) <= 1e-12);
}

TEST_CASE("bundled reduction checks pass at reduced size") {
    verify::ReductionSettings settings;
    settings.seeds = 2;
    settings.deffuant_steps = 80;
    settings.sync_steps = 40;
    settings.async_steps = 300;
    const verify::ReductionReport rep = verify::run_reduction_checks(settings);
    CHECK(rep.pass());
    CHECK(rep.worst_deffuant <= 1e-12);
    CHECK(rep.worst_sync <= 1e-12);
    CHECK(rep.worst_async <= 1e-12);
}
