#pragma once

#include <btlab/adversary.hpp>
#include <btlab/bounds.hpp>
#include <btlab/knapsack.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace btlab
{
    // Instance documents carry all big integers as decimal strings so values
    // round-trip bit-exactly on any platform:
    //   { "n": 8, "capacity": "524880", "items": ["1", ...],
    //     "provenance": { ... } }        (provenance optional, echoed as-is)
    auto read_instance(std::istream & in) -> SimpleKnapsackInstance;
    auto read_instance_file(const std::filesystem::path & path) -> SimpleKnapsackInstance;
    void write_instance(std::ostream & out, const SimpleKnapsackInstance & instance);
    void write_instance_file(const std::filesystem::path & path, const SimpleKnapsackInstance & instance);

    // Provenance payload for generated instances.
    auto make_provenance(const AdversaryParams & params, const std::string & solver,
        std::uint64_t seed) -> std::string;

    auto params_to_json(const AdversaryParams & params) -> std::string;
    auto params_from_json(const std::string & text) -> AdversaryParams;

    void write_witness_report(std::ostream & out, const WitnessReport & report,
        const std::string & solver, std::uint64_t seed);
    void write_witness_report_file(const std::filesystem::path & path, const WitnessReport & report,
        const std::string & solver, std::uint64_t seed);

    struct StoredWitnessReport
    {
        AdversaryParams params;
        std::string solver;
        std::uint64_t seed = 0;
        std::vector<BigInt> picks;
        std::vector<WitnessEntry> entries;
        std::size_t successes = 0;
        BigInt bound;
        bool complete = false;
    };

    auto read_witness_report(std::istream & in) -> StoredWitnessReport;
    auto read_witness_report_file(const std::filesystem::path & path) -> StoredWitnessReport;

    void write_certificate(std::ostream & out, const Certificate & certificate,
        std::span<const SubsetSelector> all_matches);

    // CSV with the columns beta, gamma, n, f, base, exponent_log2,
    // binomial_exact, stirling_approx, ratio; reals use 12 significant
    // digits, empty fields for unavailable values.
    void write_bound_table_csv(std::ostream & out, std::span<const bounds::BoundRow> rows);

    auto format_real(double value) -> std::string; // 12 significant digits
}
