#include <doctest.h>

#include "longdoc/aggregate.hpp"
#include "longdoc/error.hpp"
#include "longdoc/rng.hpp"

using namespace longdoc;

namespace {

using Dists = std::vector<ClassDistribution>;

ClassDistribution random_dist(Rng& rng, std::size_t k) {
    ClassDistribution d{std::vector<double>(k)};
    double s = 0;
    for (auto& p : d.probs) s += p = rng.unit() + 1e-3;
    for (auto& p : d.probs) p /= s;
    return d;
}

}  // namespace

TEST_SUITE("aggregate") {
    TEST_CASE("mean") {
        const auto p = aggregate_mean(Dists{{{0.6, 0.4}}, {{0.2, 0.8}}});
        CHECK(p.doc_distribution.probs[0] == doctest::Approx(0.4));
        CHECK(p.doc_distribution.probs[1] == doctest::Approx(0.6));
        CHECK(p.final_class == 1);
        CHECK(p.n_sentences == 2);
        CHECK(p.strategy == Aggregation::Mean);

        const Dists one = {{{0.1, 0.7, 0.2}}};
        CHECK(aggregate_mean(one).doc_distribution == one[0]);
        CHECK(aggregate_mean(Dists{{{0.5, 0.5}}, {{0.5, 0.5}}}).final_class == 0);
    }

    TEST_CASE("vote") {
        const auto p = aggregate_vote(Dists{{{0.9, 0.1}}, {{0.3, 0.7}}, {{0.4, 0.6}}});
        CHECK(p.doc_distribution.probs[0] == doctest::Approx(1.0 / 3));
        CHECK(p.doc_distribution.probs[1] == doctest::Approx(2.0 / 3));
        CHECK(p.final_class == 1);

        const auto all2 = aggregate_vote(Dists{{{0.1, 0.2, 0.7}}, {{0.0, 0.1, 0.9}}});
        CHECK(all2.doc_distribution.probs == std::vector<double>{0.0, 0.0, 1.0});
        CHECK(all2.final_class == 2);

        const auto tie = aggregate_vote(Dists{{{0.1, 0.2, 0.7}}, {{0.0, 0.9, 0.1}}, {{0.2, 0.1, 0.7}},
                                              {{0.0, 0.6, 0.4}}});
        CHECK(tie.final_class == 1);
    }

    TEST_CASE("max") {
        const auto p = aggregate_max(Dists{{{0.9, 0.1}}, {{0.4, 0.6}}});
        CHECK(p.final_class == 0);
        CHECK(p.doc_distribution.probs == std::vector<double>{0.9, 0.1});

        const Dists same = {{{0.3, 0.7}}, {{0.3, 0.7}}};
        const auto s = aggregate_max(same);
        CHECK(s.final_class == 1);
        CHECK(s.doc_distribution == same[0]);

        const Dists later = {{{0.3, 0.7}}, {{0.05, 0.95}}};
        CHECK(aggregate_max(later).doc_distribution == later[1]);

        const Dists one = {{{0.2, 0.3, 0.5}}};
        CHECK(aggregate_max(one).doc_distribution == one[0]);
        CHECK(aggregate_max(one).final_class == 2);
    }

    TEST_CASE("errors and names") {
        CHECK_THROWS_AS(aggregate_mean(Dists{}), ContractError);
        CHECK_THROWS_AS(aggregate_vote(Dists{}), ContractError);
        CHECK_THROWS_AS(aggregate_max(Dists{}), ContractError);
        CHECK_THROWS_AS(aggregate_mean(Dists{{{0.5, 0.5}}, {{1.0}}}), ContractError);
        for (auto a : {Aggregation::Mean, Aggregation::Vote, Aggregation::Max})
            CHECK(aggregation_from_name(aggregation_name(a)) == a);
        CHECK_THROWS_AS(aggregation_from_name("median"), ContractError);
    }

    TEST_CASE("properties on random inputs") {
        Rng rng(17);
        for (int trial = 0; trial < 300; ++trial) {
            const auto k = rng.between(2, 6);
            const auto n = rng.between(1, 12);
            Dists ds;
            for (std::size_t i = 0; i < n; ++i) ds.push_back(random_dist(rng, k));

            for (auto a : {Aggregation::Mean, Aggregation::Vote, Aggregation::Max}) {
                const auto p = aggregate(a, ds);
                CHECK(p.doc_distribution.valid());
                CHECK(p.n_sentences == n);
                CHECK(p.final_class < k);
                if (a != Aggregation::Max) CHECK(p.final_class == p.doc_distribution.argmax());
            }

            // permutation invariance
            auto shuffled = ds;
            rng.shuffle(std::span<ClassDistribution>(shuffled));
            const auto m1 = aggregate_mean(ds), m2 = aggregate_mean(shuffled);
            CHECK(m1.final_class == m2.final_class);
            for (std::size_t c = 0; c < k; ++c)
                CHECK(m1.doc_distribution.probs[c] == doctest::Approx(m2.doc_distribution.probs[c]).epsilon(1e-12));
            CHECK(aggregate_vote(ds).doc_distribution == aggregate_vote(shuffled).doc_distribution);
            CHECK(aggregate_max(ds).final_class == aggregate_max(shuffled).final_class);

            // uniform positive scaling
            auto scaled = ds;
            const double c = 0.1 + 10 * rng.unit();
            for (auto& d : scaled)
                for (auto& p : d.probs) p *= c;
            CHECK(aggregate_mean(scaled).final_class == m1.final_class);

            // unanimity
            auto unanimous = ds;
            const auto winner = rng.below(k);
            for (auto& d : unanimous) {
                for (auto& p : d.probs) p = 0.5 / static_cast<double>(k);
                d.probs[winner] += 0.5;
            }
            for (auto a : {Aggregation::Mean, Aggregation::Vote, Aggregation::Max})
                CHECK(aggregate(a, unanimous).final_class == winner);
        }
    }
}
