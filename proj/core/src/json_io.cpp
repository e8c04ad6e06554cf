#include "desconf/json_io.hpp"

#include "desconf/error.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace desconf {

namespace {

std::string coords_of(const Coords& c, int count) {
    std::string out;
    for (int i = 0; i < count; ++i) {
        if (i) out += ',';
        out += std::to_string(value(c[i]));
    }
    return out;
}

Json labels(const std::vector<PairLabel>& xs) {
    Json out = Json::array();
    for (const PairLabel& x : xs) out.push_back(x.to_string());
    return out;
}

}  // namespace

Json to_json(const Configuration& d) {
    const ProjectiveSpace& host = d.host();
    Json doc;
    doc["q"] = host.q();
    doc["field"] = host.field().spec().to_string();
    doc["n"] = host.dimension();
    Json points = Json::object();
    for (int x = 0; x < 10; ++x) points[PairLabel::from_index(x).to_string()] = format_coords(d.points()[x]);
    doc["points"] = points;
    Json blocks = Json::array();
    Json blocklines = Json::object();
    for (int t = 0; t < 10; ++t) {
        const TripleLabel block = TripleLabel::from_index(t);
        Json members = Json::array();
        for (const PairLabel& p : block.points()) members.push_back(p.to_string());
        blocks.push_back(members);
        Json rows = Json::array();
        const Subspace& line = d.blockline(block);
        for (int r = 0; r < line.rank(); ++r) rows.push_back(coords_of(line.row(r), host.coord_count()));
        blocklines[block.to_string()] = rows;
    }
    doc["blocks"] = blocks;
    doc["blocklines"] = blocklines;
    doc["self_conjugate"] = labels(self_conjugate_points(d));
    doc["spatial"] = d.spatial();
    return doc;
}

Configuration configuration_from_json(const Json& doc) {
    try {
        const FieldSpec spec = doc.contains("field") ? FieldSpec::parse(doc.at("field").get<std::string>())
                                                     : FieldSpec::for_order(doc.at("q").get<unsigned>());
        if (doc.contains("q") && spec.order() != doc.at("q").get<unsigned>()) {
            throw Error(ErrorCode::Parse, "\"q\" and \"field\" disagree");
        }
        const ProjectiveSpace host(make_shared_field(spec), doc.at("n").get<int>());
        std::array<Point, 10> pts{};
        std::array<bool, 10> seen{};
        for (const auto& [label, coords] : doc.at("points").items()) {
            const int x = PairLabel::parse(label).index();
            pts[x] = host.parse_point(coords.get<std::string>());
            seen[x] = true;
        }
        for (int x = 0; x < 10; ++x) {
            if (!seen[x]) throw Error(ErrorCode::Parse, "missing point " + PairLabel::from_index(x).to_string());
        }
        if (doc.contains("blocks")) {
            for (const auto& block : doc.at("blocks")) {
                if (block.size() != 3) throw Error(ErrorCode::Parse, "blocks have three points");
                std::array<PairLabel, 3> b{PairLabel::parse(block[0].get<std::string>()),
                                           PairLabel::parse(block[1].get<std::string>()),
                                           PairLabel::parse(block[2].get<std::string>())};
                std::array<int, 6> symbols{b[0].i, b[0].j, b[1].i, b[1].j, b[2].i, b[2].j};
                std::sort(symbols.begin(), symbols.end());
                // A block [ijk] uses each of its three symbols exactly twice.
                if (!(symbols[0] == symbols[1] && symbols[2] == symbols[3] && symbols[4] == symbols[5] &&
                      symbols[1] != symbols[2] && symbols[3] != symbols[4])) {
                    throw Error(ErrorCode::Parse, "block does not follow the pair/triple labelling");
                }
            }
        }
        return Configuration::from_points(host, pts);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

Json to_json(const FiveCompressor& s) {
    Json doc;
    doc["q"] = s.space().q();
    doc["field"] = s.space().field().spec().to_string();
    doc["n"] = s.space().dimension();
    Json pts = Json::array();
    for (const Point& p : s.points()) pts.push_back(format_coords(p));
    doc["points"] = pts;
    doc["five_arc"] = s.is_arc();
    return doc;
}

Json to_json(const BlocklineStructure& s) {
    Json doc = Json::object();
    for (int t = 0; t < 10; ++t) doc[TripleLabel::from_index(t).to_string()] = labels(s.subsets[t]);
    return doc;
}

Json to_json(const ConfigKey& key) {
    Json doc;
    doc["points"] = key.points;
    doc["blocks"] = key.blocks;
    return doc;
}

Json to_json(const CountReport& r, bool timing) {
    Json doc;
    doc["quantity"] = std::string(to_string(r.quantity));
    doc["q"] = r.q;
    doc["closed_form"] = r.closed_form.str();
    doc["brute_force"] = r.brute_force ? Json(r.brute_force->str()) : Json(nullptr);
    doc["agree"] = r.agree ? Json(*r.agree) : Json(nullptr);
    if (r.through_point) doc["through_point"] = *r.through_point;
    if (r.quantity == Quantity::NaivePlanarThroughPoint && r.brute_force) doc["expected_disagreement"] = r.q >= 3;
    if (timing) doc["elapsed_ms"] = r.elapsed_ms;
    return doc;
}

std::string to_hex(PointSet s) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", s.bits);
    return buf;
}

Json to_json(const TwoBlockReport& r) {
    Json doc;
    doc["total_subsets"] = r.total_subsets;
    doc["hyperplane"] = r.hyperplane;
    doc["spatial_desargues"] = r.spatial_desargues;
    doc["other"] = r.other;
    Json examples = Json::array();
    for (PointSet s : r.other_examples) examples.push_back(to_hex(s));
    doc["other_examples"] = examples;
    doc["definition_gap"] = r.definition_gap();
    return doc;
}

Json to_json(const InjectivityReport& r) {
    Json doc;
    doc["q"] = r.q;
    doc["through_point"] = format_coords(r.through);
    doc["configurations"] = r.configurations;
    doc["groups"] = r.groups;
    Json collisions = Json::array();
    for (const auto& [a, b] : r.collisions) collisions.push_back(Json::array({to_json(a), to_json(b)}));
    doc["collisions"] = collisions;
    return doc;
}

Json inspect(const Configuration& d) {
    Json doc;
    doc["q"] = d.host().q();
    doc["n"] = d.host().dimension();
    doc["self_conjugate"] = labels(self_conjugate_points(d));
    doc["blockline_structure"] = to_json(blockline_structure(d));
    doc["spatial"] = d.spatial();
    return doc;
}

}  // namespace desconf
