#include "cli.hpp"

#include "desconf/enumeration.hpp"
#include "desconf/error.hpp"
#include "desconf/json_io.hpp"
#include "desconf/twoblock.hpp"
#include "desconf/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace desconf::cli {

namespace {

struct Common {
    std::vector<unsigned> q;
    std::string field;
    std::string format = "json";
    std::string output;
    std::string limits;
    unsigned jobs = 0;
    bool no_timing = false;
};

struct Inputs {
    std::string quantity;
    std::string through;
    std::string suite;
    std::uint64_t samples = 10000;
    std::uint64_t seed = SuiteOptions{}.seed;
    std::string fault;
    std::string compressor;
    std::string hyperplane;
    std::string config;
    std::string vertex;
    std::string apex;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

unsigned single_q(const Common& c) {
    if (c.q.size() > 1) throw UsageError("this subcommand takes a single --q");
    if (!c.q.empty()) return c.q.front();
    if (!c.field.empty()) return FieldSpec::parse(c.field).order();
    throw UsageError("--q or --field is required");
}

std::shared_ptr<const Field> field_of(const Common& c) {
    if (c.field.empty()) return make_shared_field(FieldSpec::for_order(single_q(c)));
    const FieldSpec spec = FieldSpec::parse(c.field);
    if (!c.q.empty() && single_q(c) != spec.order()) throw UsageError("--q and --field disagree");
    return make_shared_field(spec);
}

OracleOptions oracle_options(const Common& c) {
    OracleOptions o;
    o.jobs = c.jobs;
    if (!c.limits.empty()) o.limits = ScaleLimits::load(c.limits);
    return o;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

Subspace hyperplane_of(const ProjectiveSpace& space, const std::string& normal) {
    if (normal.empty()) return space.standard_hyperplane();
    const Point u = space.parse_point(normal);
    return space.hyperplane(u.coords);
}

class Emitter {
public:
    Emitter(const Common& c, std::ostream& out) : out_(&out) {
        if (!c.output.empty()) {
            file_.open(c.output);
            if (!file_) throw UsageError("cannot write " + c.output);
            out_ = &file_;
        }
    }
    void json(const Json& doc) { *out_ << doc.dump(2) << '\n'; }
    std::ostream& raw() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

int cmd_count(const Common& c, const Inputs& in, std::ostream& out) {
    if (c.q.empty()) throw UsageError("--q is required");
    if (c.format != "json" && c.format != "tsv") throw UsageError("--format must be json or tsv");
    std::vector<Quantity> quantities;
    if (in.quantity == "ALL") quantities.assign(std::begin(kAllQuantities), std::end(kAllQuantities));
    else quantities.push_back(parse_quantity(in.quantity));

    std::vector<CountReport> reports;
    for (Quantity quantity : quantities) {
        for (unsigned q : c.q) reports.push_back(count_report(quantity, q));
    }
    Emitter emit(c, out);
    if (c.format == "tsv") {
        emit.raw() << "quantity\tq\tclosed_form\n";
        for (const auto& r : reports) emit.raw() << to_string(r.quantity) << '\t' << r.q << '\t' << r.closed_form << '\n';
    } else if (reports.size() == 1) {
        emit.json(to_json(reports.front(), !c.no_timing));
    } else {
        Json doc = Json::array();
        for (const auto& r : reports) doc.push_back(to_json(r, !c.no_timing));
        emit.json(doc);
    }
    return kOk;
}

int cmd_oracle(const Common& c, const Inputs& in, std::ostream& out) {
    const unsigned q = single_q(c);
    std::optional<std::string> through;
    if (!in.through.empty()) through = in.through;
    const CountReport r = oracle_report(parse_quantity(in.quantity), q, through, oracle_options(c));
    Emitter emit(c, out);
    emit.json(to_json(r, !c.no_timing));
    return r.expected_outcome() ? kOk : kVerificationFailure;
}

int cmd_verify(const Common& c, const Inputs& in, std::ostream& out) {
    const Suite suite = parse_suite(in.suite);
    const unsigned q = single_q(c);
    SuiteOptions options;
    options.samples = in.samples;
    options.seed = in.seed;
    options.oracle = oracle_options(c);
    if (!c.field.empty() || !in.fault.empty()) {
        auto field = field_of(c);
        if (!in.fault.empty()) {
            const auto parts = split(in.fault, ',');
            if (parts.size() != 3) throw UsageError("--inject-fault expects a,b,v");
            std::array<unsigned, 3> v{};
            for (int i = 0; i < 3; ++i) {
                try {
                    v[i] = static_cast<unsigned>(std::stoul(parts[i]));
                } catch (const std::logic_error&) {
                    throw UsageError("--inject-fault expects element indices");
                }
                if (v[i] >= field->order()) throw UsageError("--inject-fault index out of range");
            }
            field = std::make_shared<const Field>(field->with_corrupted_product(elem(v[0]), elem(v[1]), elem(v[2])));
        }
        options.field = field;
    }
    const SuiteResult r = run_suite(suite, q, options);
    Emitter emit(c, out);
    Json doc = r.to_json(!c.no_timing);
    if (!in.fault.empty()) doc["injected_fault"] = in.fault;
    emit.json(doc);
    return r.passed ? kOk : kVerificationFailure;
}

int cmd_section(const Common& c, const Inputs& in, std::ostream& out) {
    const auto field = field_of(c);
    const auto parts = split(in.compressor, ';');
    if (parts.size() != 5) throw UsageError("--compressor expects five ';'-separated points");
    const int n = static_cast<int>(split(parts[0], ',').size()) - 1;
    if (n != 3 && n != 4) throw UsageError("compressor points need 4 or 5 coordinates");
    const ProjectiveSpace space(field, n);
    std::array<Point, 5> pts;
    for (int i = 0; i < 5; ++i) pts[i] = space.parse_point(parts[i]);
    const FiveCompressor s(space, pts);
    const Configuration d = section_compressor(s, hyperplane_of(space, in.hyperplane));
    Emitter emit(c, out);
    emit.json(to_json(d));
    return kOk;
}

int cmd_lift(const Common& c, const Inputs& in, std::ostream& out) {
    const Configuration d = configuration_from_json(read_json_file(in.config));
    const ProjectiveSpace space(d.host().field_ptr(), d.host().dimension() + 1);
    const auto parts = split(in.apex, ';');
    if (parts.size() != 2) throw UsageError("--apex expects two ';'-separated points");
    const Point p1 = space.parse_point(parts[0]);
    const Point p2 = space.parse_point(parts[1]);
    const auto [s1, s2] = lift_to_compressors(d, PairLabel::parse(in.vertex), p1, p2, hyperplane_of(space, in.hyperplane));
    Json doc;
    doc["vertex"] = in.vertex;
    doc["lifts"] = Json::array({to_json(s1), to_json(s2)});
    Emitter emit(c, out);
    emit.json(doc);
    return kOk;
}

int cmd_inspect(const Common& c, const Inputs& in, std::ostream& out) {
    const Configuration d = configuration_from_json(read_json_file(in.config));
    Emitter emit(c, out);
    emit.json(inspect(d));
    return kOk;
}

int cmd_twoblock(const Common& c, std::ostream& out) {
    const TwoBlockReport r = classify_two_blocks(c.jobs);
    Emitter emit(c, out);
    emit.json(to_json(r));
    return kOk;
}

Json error_doc(std::string_view code, const std::string& message) {
    Json doc;
    doc["error"] = std::string(code);
    doc["message"] = message;
    return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Desargues configurations over finite fields"};
    app.name("desconf");
    app.require_subcommand(1);
    Common c;
    Inputs in;

    auto common = [&](CLI::App* sub, bool multi_q) {
        if (multi_q) sub->add_option("--q", c.q, "Field order(s)")->delimiter(',');
        else sub->add_option("--q", c.q, "Field order")->expected(1);
        sub->add_option("--output", c.output, "Write the document to this file");
        sub->add_flag("--no-timing", c.no_timing, "Leave out elapsed times");
    };
    auto oracle_flags = [&](CLI::App* sub) {
        sub->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");
        sub->add_option("--limits", c.limits, "key=value file of scale limits")->check(CLI::ExistingFile);
    };

    auto* count = app.add_subcommand("count", "Evaluate closed forms");
    common(count, true);
    count->add_option("--quantity", in.quantity, "Quantity tag or ALL")->required();
    count->add_option("--format", c.format, "json or tsv");

    auto* oracle = app.add_subcommand("oracle", "Compare a closed form with its brute-force oracle");
    common(oracle, false);
    oracle_flags(oracle);
    oracle->add_option("--quantity", in.quantity, "Quantity tag")->required();
    oracle->add_option("--through-point", in.through, "Fixed point, e.g. 1,0,2");

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    common(verify, false);
    oracle_flags(verify);
    verify->add_option("--suite", in.suite, "Suite name")->required();
    verify->add_option("--field", c.field, "Field spec p^k/c_k,...,c_0");
    verify->add_option("--samples", in.samples, "Random samples");
    verify->add_option("--seed", in.seed, "Sampler seed");
    verify->add_option("--inject-fault", in.fault, "Corrupt the product a*b to v (element indices)");

    auto* section = app.add_subcommand("section", "Section a 5-compressor by a hyperplane");
    common(section, false);
    section->add_option("--field", c.field, "Field spec p^k/c_k,...,c_0");
    section->add_option("--compressor", in.compressor, "Five points p;p;p;p;p")->required();
    section->add_option("--hyperplane", in.hyperplane, "Normal vector (default: last coordinate = 0)");

    auto* lift = app.add_subcommand("lift", "Lift a planar or spatial configuration to two 5-compressors");
    common(lift, false);
    lift->add_option("--config", in.config, "Configuration JSON file")->required();
    lift->add_option("--vertex", in.vertex, "Vertex label, e.g. 12")->required();
    lift->add_option("--apex", in.apex, "Apex points P1;P2 of the lift space")->required();
    lift->add_option("--hyperplane", in.hyperplane, "Normal vector (default: last coordinate = 0)");

    auto* insp = app.add_subcommand("inspect", "Self-conjugate points and blockline structure");
    common(insp, false);
    insp->add_option("--config", in.config, "Configuration JSON file")->required();

    auto* twoblock = app.add_subcommand("twoblock", "Classify the tangential 2-blocks of PG(3,2)");
    common(twoblock, false);
    twoblock->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << error_doc("Usage", e.what()).dump() << '\n';
        return kUsage;
    }

    try {
        if (count->parsed()) return cmd_count(c, in, out);
        if (oracle->parsed()) return cmd_oracle(c, in, out);
        if (verify->parsed()) return cmd_verify(c, in, out);
        if (section->parsed()) return cmd_section(c, in, out);
        if (lift->parsed()) return cmd_lift(c, in, out);
        if (insp->parsed()) return cmd_inspect(c, in, out);
        if (twoblock->parsed()) return cmd_twoblock(c, out);
    } catch (const UsageError& e) {
        err << error_doc("Usage", e.what()).dump() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << error_doc(to_string(e.code()), e.what()).dump() << '\n';
        return e.code() == ErrorCode::InternalDefect ? kVerificationFailure : kUsage;
    }
    return kUsage;
}

}  // namespace desconf::cli
