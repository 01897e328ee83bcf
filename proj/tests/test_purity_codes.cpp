#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qotp/purity_code.hpp"

using namespace qotp;

TEST_CASE("code sampling is deterministic in (m, s, z)") {
    Rng rng(1);
    BitVec z = rng.bits(8);
    PurityTestingCode a = sample_code(2, 3, z);
    PurityTestingCode b = sample_code(2, 3, z);
    CHECK(a.circuit == b.circuit);
    CHECK(a.circuit.to_text() == b.circuit.to_text());
    CHECK(a.circuit.size() == std::size_t(4 * 5 * 5));
}

TEST_CASE("distinct seeds reach distinct circuits") {
    int distinct = 0;
    PurityTestingCode first = sample_code(1, 1, BitVec::from_string("0"));
    for (std::uint64_t v = 0; v < 100; ++v) {
        BitVec z(8);
        for (int i = 0; i < 8; ++i) z.set(std::size_t(i), (v >> i) & 1);
        if (!(sample_code(1, 1, z).circuit == first.circuit)) ++distinct;
    }
    CHECK(distinct >= 2);
}

TEST_CASE("sampling validates its arguments") {
    CHECK_THROWS_AS(sample_code(0, 1, BitVec(1)), std::invalid_argument);
    CHECK_THROWS_AS(sample_code(1, 0, BitVec(1)), std::invalid_argument);
    CHECK_THROWS_AS(sample_code(1, 1, BitVec()), std::invalid_argument);
}

TEST_CASE("stabilizers commute pairwise under the symplectic form") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        PurityTestingCode code = sample_code(1 + int(rng.below(3)), 1 + int(rng.below(4)),
                                             rng.bits(64));
        auto stabs = code.stabilizers();
        CHECK(int(stabs.size()) == code.s);
        for (std::size_t i = 0; i < stabs.size(); ++i) {
            CHECK_FALSE(stabs[i].is_identity_up_to_phase());
            for (std::size_t j = i + 1; j < stabs.size(); ++j) {
                CHECK(stabs[i].commutes_with(stabs[j]));
            }
        }
    }
}

TEST_CASE("encode then verify on an untouched channel recovers the payload") {
    Rng rng(7);
    Rng measure(100);
    for (int rep = 0; rep < 25; ++rep) {
        int m = 1 + int(rng.below(3)), s = 1 + int(rng.below(4));
        PurityTestingCode code = sample_code(m, s, rng.bits(64));
        BitVec y = rng.bits(std::size_t(s));
        StateVector payload = StateVector::random(SubsystemLayout::single("P", m), rng);
        VerifyResult out = decode_and_verify(encode(payload, code, y), code, y, measure);
        CHECK(out.accept);
        CHECK(out.syndrome == y);
        CHECK(std::norm(out.payload.inner(payload)) >= 1.0 - 1e-12);
    }
}

TEST_CASE("round trips hold over fifty codes and ten payloads per size") {
    Rng rng(8);
    Rng measure(101);
    for (int m = 1; m <= 3; ++m) {
        for (int s = 1; s <= 4; s += 3) {
            std::vector<StateVector> payloads;
            for (int p = 0; p < 10; ++p) {
                payloads.push_back(StateVector::random(SubsystemLayout::single("P", m), rng));
            }
            double worst = 1.0;
            for (int zdraw = 0; zdraw < 50; ++zdraw) {
                PurityTestingCode code = sample_code(m, s, rng.bits(64));
                BitVec y = rng.bits(std::size_t(s));
                const StateVector& payload = payloads[std::size_t(zdraw % 10)];
                VerifyResult out = decode_and_verify(encode(payload, code, y), code, y, measure);
                REQUIRE(out.accept);
                worst = std::min(worst, std::norm(out.payload.inner(payload)));
            }
            CHECK(worst >= 1.0 - 1e-10);
        }
    }
}

TEST_CASE("the degenerate identity code appends plain ancillas") {
    PurityTestingCode code{2, 2, BitVec::from_string("1"), CliffordCircuit(4)};
    Rng rng(9);
    StateVector payload = StateVector::random(SubsystemLayout::single("P", 2), rng);
    StateVector wire = encode(payload, code, BitVec(2));
    StateVector want =
        payload.tensor(StateVector::basis_state(SubsystemLayout::single("anc", 2), std::uint64_t(0)));
    CHECK(std::abs(std::abs(wire.inner(want)) - 1.0) < 1e-12);
}

TEST_CASE("a maximally mixed payload keeps its entropy through encoding") {
    Rng rng(11);
    PurityTestingCode code = sample_code(2, 2, rng.bits(64));
    DensityMatrix payload = DensityMatrix::maximally_mixed(SubsystemLayout::single("P", 2));
    DensityMatrix wire = encode(payload, code, rng.bits(2));
    CHECK(vn_entropy(wire) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("attacks built from code stabilizers pass undetected") {
    Rng rng(13);
    Rng measure(200);
    PurityTestingCode code = sample_code(2, 3, rng.bits(64));
    auto stabs = code.stabilizers();
    StateVector payload = StateVector::random(SubsystemLayout::single("P", 2), rng);
    BitVec y = rng.bits(3);
    for (const auto& stab : stabs) {
        StateVector wire = encode(payload, code, y);
        apply_pauli(wire, stab, 0);
        VerifyResult out = decode_and_verify(wire, code, y, measure);
        CHECK(out.accept);
        CHECK_FALSE(code.syndrome_flips(stab).any());
    }
}

TEST_CASE("syndrome flips match anticommutation exactly on dense runs") {
    Rng rng(17);
    Rng measure(300);
    for (int rep = 0; rep < 30; ++rep) {
        int m = 1 + int(rng.below(2)), s = 1 + int(rng.below(3));
        int n = m + s;
        PurityTestingCode code = sample_code(m, s, rng.bits(64));
        PauliString attack(n, rng.bits(std::size_t(n)), rng.bits(std::size_t(n)), 0);
        BitVec y = rng.bits(std::size_t(s));
        StateVector payload = StateVector::random(SubsystemLayout::single("P", m), rng);

        StateVector wire = encode(payload, code, y);
        apply_pauli(wire, attack, 0);
        VerifyResult out = decode_and_verify(wire, code, y, measure);

        BitVec flips = code.syndrome_flips(attack);
        CHECK(out.syndrome == (y ^ flips));
        CHECK(out.accept == !flips.any());

        // Second route: anticommutation against each stabilizer.
        auto stabs = code.stabilizers();
        for (int i = 0; i < s; ++i) {
            CHECK(flips.get(std::size_t(i)) == !attack.commutes_with(stabs[std::size_t(i)]));
        }
    }
}

TEST_CASE("single-qubit flip at m=2, s=3 is missed at the 2^-3 rate") {
    const int trials = 10000;
    PauliString attack = PauliString::single(5, 0, 'X');
    DetectionEstimate est = detection_probability(2, 3, attack, trials, 424242);
    double miss = 1.0 - est.estimate;
    double sigma = std::sqrt(0.125 * 0.875 / trials);
    CHECK(std::abs(miss - 0.125) <= 3.0 * sigma + 0.004);
}

TEST_CASE("miss rate halves per extra syndrome qubit") {
    double prev = 0.0;
    for (int s = 1; s <= 6; ++s) {
        PauliString attack = PauliString::single(2 + s, 0, 'X');
        DetectionEstimate est = detection_probability(2, s, attack, 4000, 777 + s);
        double miss = 1.0 - est.estimate;
        if (s > 1) {
            CHECK(miss == doctest::Approx(prev / 2.0).epsilon(0.45));
        }
        prev = miss;
    }
}

TEST_CASE("the all-Y attack at s=4 is missed near 2^-4") {
    PauliString attack(6);
    for (int q = 0; q < 6; ++q) attack = attack * PauliString::single(6, q, 'Y');
    DetectionEstimate est = detection_probability(2, 4, attack, 10000, 99);
    double miss = 1.0 - est.estimate;
    CHECK(std::abs(miss - 0.0625) <= 3.0 * std::sqrt(0.0625 * 0.9375 / 10000.0) + 0.003);
}

TEST_CASE("identity and phase-only attacks are rejected as meaningless") {
    CHECK_THROWS_AS(detection_probability(2, 2, PauliString(4), 100, 1), std::invalid_argument);
    PauliString minus_i(4);
    minus_i.add_phase(2);
    CHECK_THROWS_AS(detection_probability(2, 2, minus_i, 100, 1), std::invalid_argument);
}

TEST_CASE("random nonidentity attacks stay under twice the nominal miss rate") {
    Rng rng(23);
    for (int s = 2; s <= 6; ++s) {
        const int n = 2 + s;
        const int trials = 10000;
        int missed = 0;
        Rng zrng(1000 + std::uint64_t(s));
        for (int t = 0; t < trials; ++t) {
            PauliString attack(n);
            while (attack.is_identity_up_to_phase()) {
                attack = PauliString(n, rng.bits(std::size_t(n)), rng.bits(std::size_t(n)), 0);
            }
            PurityTestingCode code = sample_code(2, s, zrng.bits(64));
            if (!code.syndrome_flips(attack).any()) ++missed;
        }
        double miss = double(missed) / trials;
        CHECK(miss <= 2.0 * std::exp2(-s));
    }
}

TEST_CASE("circuit text round-trips") {
    Rng rng(29);
    PurityTestingCode code = sample_code(2, 2, rng.bits(64));
    std::string text = code.circuit.to_text();
    CHECK(text.rfind("CLIFF n=4", 0) == 0);
    CliffordCircuit parsed = CliffordCircuit::from_text(text);
    CHECK(parsed == code.circuit);
    CHECK_THROWS_AS(CliffordCircuit::from_text("H 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(CliffordCircuit::from_text("CLIFF n=2\nQ 0\n"), std::invalid_argument);
}
