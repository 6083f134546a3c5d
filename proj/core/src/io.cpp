#include <btlab/errors.hpp>
#include <btlab/io.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace btlab
{
    namespace
    {
        using json = nlohmann::ordered_json;

        auto parse_document(std::istream & in) -> json
        {
            try {
                return json::parse(in);
            }
            catch (const json::parse_error & e) {
                throw ParseError{std::string{"malformed document: "} + e.what()};
            }
        }

        auto require_string(const json & document, const char * key) -> std::string
        {
            if (! document.contains(key) || ! document[key].is_string())
                throw ParseError{std::string{"missing or non-string field '"} + key + "'"};
            return document[key].get<std::string>();
        }

        auto decimal_array(const json & value, const char * what) -> std::vector<BigInt>
        {
            if (! value.is_array())
                throw ParseError{std::string{what} + " must be an array of decimal strings"};
            std::vector<BigInt> result;
            result.reserve(value.size());
            for (const auto & entry : value) {
                if (! entry.is_string())
                    throw ParseError{std::string{what} + " must contain decimal strings"};
                result.push_back(parse_decimal(entry.get<std::string>()));
            }
            return result;
        }

        auto decimal_strings(std::span<const BigInt> values) -> json
        {
            auto array = json::array();
            for (const auto & value : values)
                array.push_back(to_decimal(value));
            return array;
        }

        void dump_to(std::ostream & out, const json & document)
        {
            out << document.dump(2) << '\n';
        }

        auto open_input(const std::filesystem::path & path) -> std::ifstream
        {
            std::ifstream in{path};
            if (! in)
                throw ParseError{"cannot open '" + path.string() + "'"};
            return in;
        }

        auto open_output(const std::filesystem::path & path) -> std::ofstream
        {
            std::ofstream out{path};
            if (! out)
                throw std::runtime_error{"cannot write '" + path.string() + "'"};
            return out;
        }

        auto params_to_document(const AdversaryParams & params) -> json
        {
            json document;
            document["n"] = std::to_string(params.n);
            document["beta"] = to_fraction(params.beta);
            document["gamma"] = to_fraction(params.gamma);
            document["alpha"] = to_fraction(params.alpha);
            document["N"] = to_decimal(params.capacity);
            document["U"] = to_decimal(params.slack);
            return document;
        }

        auto params_from_document(const json & document) -> AdversaryParams
        {
            AdversaryParams params;
            params.n = static_cast<unsigned>(parse_decimal(require_string(document, "n")).convert_to<unsigned long>());
            params.beta = parse_fraction(require_string(document, "beta"));
            params.gamma = parse_fraction(require_string(document, "gamma"));
            params.alpha = parse_fraction(require_string(document, "alpha"));
            params.capacity = parse_decimal(require_string(document, "N"));
            params.slack = parse_decimal(require_string(document, "U"));
            return params;
        }
    }

    auto read_instance(std::istream & in) -> SimpleKnapsackInstance
    {
        const auto document = parse_document(in);
        if (! document.is_object())
            throw ParseError{"instance document must be an object"};
        if (! document.contains("n") || ! document["n"].is_number_integer())
            throw ParseError{"missing or non-integer field 'n'"};
        if (! document.contains("items"))
            throw ParseError{"missing field 'items'"};

        SimpleKnapsackInstance instance;
        instance.capacity = parse_decimal(require_string(document, "capacity"));
        instance.items = decimal_array(document["items"], "items");
        const auto declared = document["n"].get<long long>();
        if (declared < 0 || static_cast<std::size_t>(declared) != instance.items.size())
            throw ParseError{"field 'n' disagrees with the item count"};
        if (document.contains("provenance"))
            instance.provenance = document["provenance"].dump();
        instance.validate();
        return instance;
    }

    auto read_instance_file(const std::filesystem::path & path) -> SimpleKnapsackInstance
    {
        auto in = open_input(path);
        return read_instance(in);
    }

    void write_instance(std::ostream & out, const SimpleKnapsackInstance & instance)
    {
        json document;
        document["n"] = instance.items.size();
        document["capacity"] = to_decimal(instance.capacity);
        document["items"] = decimal_strings(instance.items);
        if (instance.provenance)
            document["provenance"] = json::parse(*instance.provenance);
        dump_to(out, document);
    }

    void write_instance_file(const std::filesystem::path & path, const SimpleKnapsackInstance & instance)
    {
        auto out = open_output(path);
        write_instance(out, instance);
    }

    auto make_provenance(const AdversaryParams & params, const std::string & solver,
        std::uint64_t seed) -> std::string
    {
        json document;
        document["params"] = params_to_document(params);
        document["solver"] = solver;
        document["seed"] = std::to_string(seed);
        return document.dump();
    }

    auto params_to_json(const AdversaryParams & params) -> std::string
    {
        return params_to_document(params).dump();
    }

    auto params_from_json(const std::string & text) -> AdversaryParams
    {
        std::istringstream in{text};
        return params_from_document(parse_document(in));
    }

    namespace
    {
        auto selector_indices(const SubsetSelector & selector) -> json
        {
            auto array = json::array();
            for (auto index : selector.indices)
                array.push_back(index);
            return array;
        }
    }

    void write_witness_report(std::ostream & out, const WitnessReport & report,
        const std::string & solver, std::uint64_t seed)
    {
        json document;
        document["params"] = params_to_document(report.params);
        document["solver"] = solver;
        document["seed"] = std::to_string(seed);
        document["P"] = decimal_strings(report.picks);
        auto entries = json::array();
        for (const auto & entry : report.entries) {
            json row;
            row["q_indices"] = selector_indices(entry.target);
            row["r_values"] = decimal_strings(entry.completion);
            row["b1"] = to_decimal(entry.pair_low);
            row["b2"] = to_decimal(entry.pair_high);
            row["verified"] = entry.verified;
            row["enumeration"] = to_decimal(entry.enumeration);
            if (entry.failure)
                row["failure"] = *entry.failure;
            entries.push_back(std::move(row));
        }
        document["entries"] = std::move(entries);
        document["successes"] = report.successes;
        document["bound"] = to_decimal(report.bound);
        document["complete"] = report.complete;
        dump_to(out, document);
    }

    void write_witness_report_file(const std::filesystem::path & path, const WitnessReport & report,
        const std::string & solver, std::uint64_t seed)
    {
        auto out = open_output(path);
        write_witness_report(out, report, solver, seed);
    }

    auto read_witness_report(std::istream & in) -> StoredWitnessReport
    {
        const auto document = parse_document(in);
        StoredWitnessReport report;
        if (! document.contains("params"))
            throw ParseError{"missing field 'params'"};
        report.params = params_from_document(document["params"]);
        report.solver = require_string(document, "solver");
        report.seed = parse_decimal(require_string(document, "seed")).convert_to<std::uint64_t>();
        report.picks = decimal_array(document.at("P"), "P");
        if (! document.contains("entries") || ! document["entries"].is_array())
            throw ParseError{"missing field 'entries'"};
        for (const auto & row : document["entries"]) {
            WitnessEntry entry;
            for (const auto & index : row.at("q_indices"))
                entry.target.indices.push_back(index.get<std::size_t>());
            entry.completion = decimal_array(row.at("r_values"), "r_values");
            entry.pair_low = parse_decimal(require_string(row, "b1"));
            entry.pair_high = parse_decimal(require_string(row, "b2"));
            entry.verified = row.at("verified").get<bool>();
            entry.enumeration = parse_decimal(require_string(row, "enumeration"));
            if (row.contains("failure"))
                entry.failure = row["failure"].get<std::string>();
            report.entries.push_back(std::move(entry));
        }
        report.successes = document.at("successes").get<std::size_t>();
        report.bound = parse_decimal(require_string(document, "bound"));
        report.complete = document.at("complete").get<bool>();
        return report;
    }

    auto read_witness_report_file(const std::filesystem::path & path) -> StoredWitnessReport
    {
        auto in = open_input(path);
        return read_witness_report(in);
    }

    void write_certificate(std::ostream & out, const Certificate & certificate,
        std::span<const SubsetSelector> all_matches)
    {
        json document;
        document["n"] = certificate.instance.size();
        document["capacity"] = to_decimal(certificate.instance.capacity);
        document["designated"] = selector_indices(certificate.designated);
        document["verified"] = certificate.verified;
        document["enumeration"] = to_decimal(certificate.enumeration);
        auto matches = json::array();
        for (const auto & match : all_matches)
            matches.push_back(selector_indices(match));
        document["subsets_at_capacity"] = std::move(matches);
        dump_to(out, document);
    }

    auto format_real(double value) -> std::string
    {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.12g", value);
        return buffer;
    }

    void write_bound_table_csv(std::ostream & out, std::span<const bounds::BoundRow> rows)
    {
        out << "beta,gamma,n,f,base,exponent_log2,binomial_exact,stirling_approx,ratio\n";
        for (const auto & row : rows) {
            out << format_real(row.beta) << ',' << format_real(row.gamma) << ',';
            if (row.n)
                out << *row.n;
            out << ',';
            if (row.exponent)
                out << format_real(*row.exponent);
            out << ',';
            if (row.base)
                out << format_real(*row.base);
            out << ',';
            if (row.exponent_log2)
                out << format_real(*row.exponent_log2);
            out << ',';
            if (row.binomial)
                out << to_decimal(*row.binomial);
            out << ',';
            if (row.stirling)
                out << format_real(*row.stirling);
            out << ',';
            if (row.ratio)
                out << format_real(*row.ratio);
            out << '\n';
        }
    }
}
