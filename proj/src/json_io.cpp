#include "cubeterm/json_io.hpp"

#include <stdexcept>

namespace cubeterm {

namespace {

bool is_count(const Json &j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0); }

ElementSet set_from_json(const Json &j, std::size_t universe, const char *what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    ElementSet s(universe);
    for (const auto &e : j) {
        if (!is_count(e) || e.get<std::uint64_t>() >= universe)
            throw std::invalid_argument(std::string(what) + " has an element outside the universe");
        s.insert(e.get<Element>());
    }
    return s;
}

}  // namespace

Json to_json(const FiniteAlgebra &algebra) {
    Json j;
    if (algebra.name) j["name"] = *algebra.name;
    j["size"] = algebra.size;
    j["operations"] = Json::array();
    for (const auto &op : algebra.operations)
        j["operations"].push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
    return j;
}

FiniteAlgebra algebra_from_json(const Json &json) {
    std::vector<Violation> problems;
    auto fail = [&](std::string kind, std::string location, std::string message) {
        problems.push_back({std::move(kind), std::move(location), std::move(message)});
    };
    if (!json.is_object()) throw InvalidAlgebra({{"schema", "", "algebra must be a JSON object"}});

    FiniteAlgebra alg;
    if (json.contains("name")) {
        if (json["name"].is_string())
            alg.name = json["name"].get<std::string>();
        else
            fail("schema", "name", "name must be a string");
    }
    if (!json.contains("size") || !is_count(json["size"]))
        fail("schema", "size", "size must be a non-negative integer");
    else
        alg.size = json["size"].get<std::size_t>();

    if (!json.contains("operations") || !json["operations"].is_array()) {
        fail("schema", "operations", "operations must be an array");
    } else {
        const auto &ops = json["operations"];
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const std::string loc = "operations[" + std::to_string(i) + "]";
            const auto &o = ops[i];
            if (!o.is_object()) {
                fail("schema", loc, "operation must be an object");
                continue;
            }
            OperationTable op;
            if (o.contains("name") && o["name"].is_string()) op.name = o["name"].get<std::string>();
            if (!o.contains("arity") || !is_count(o["arity"]))
                fail("schema", loc + ".arity", "arity must be a non-negative integer");
            else
                op.arity = o["arity"].get<std::size_t>();
            if (!o.contains("table") || !o["table"].is_array()) {
                fail("schema", loc + ".table", "table must be an array");
            } else {
                const auto &t = o["table"];
                for (std::size_t k = 0; k < t.size(); ++k) {
                    if (!t[k].is_number_integer()) {
                        fail("schema", loc + ".table[" + std::to_string(k) + "]", "entry must be an integer");
                    } else if (!is_count(t[k]) || t[k].get<std::uint64_t>() > 0xffffffffULL) {
                        fail("entry-out-of-range", loc + ".table[" + std::to_string(k) + "]",
                             "entry outside the universe");
                    }
                    op.table.push_back(is_count(t[k]) ? static_cast<Element>(t[k].get<std::uint64_t>()) : 0);
                }
            }
            alg.operations.push_back(std::move(op));
        }
    }
    if (!problems.empty()) throw InvalidAlgebra(problems);
    ensure_valid(alg);
    return alg;
}

FiniteAlgebra algebra_from_text(const std::string &text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidAlgebra({{"syntax", "", "input is not valid JSON"}});
    return algebra_from_json(j);
}

Json to_json(const ElementSet &set) { return set.members(); }

Json to_json(const Blocker &blocker) { return {{"C", to_json(blocker.C)}, {"D", to_json(blocker.D)}}; }

Json to_json(const Relation &relation) {
    Json j{{"arity", relation.arity()}, {"tuples", Json::array()}};
    relation.for_each([&](const Tuple &t) { j["tuples"].push_back(t); });
    return j;
}

Relation relation_from_json(const Json &json, std::size_t universe) {
    if (!json.is_object() || !json.contains("arity") || !is_count(json["arity"]) || !json.contains("tuples") ||
        !json["tuples"].is_array())
        throw std::invalid_argument("relation needs arity and tuples");
    const auto k = json["arity"].get<std::size_t>();
    std::vector<Tuple> tuples;
    for (const auto &t : json["tuples"]) {
        if (!t.is_array() || t.size() != k) throw std::invalid_argument("tuple of the wrong arity");
        Tuple tuple;
        for (const auto &e : t) {
            if (!is_count(e) || e.get<std::uint64_t>() >= universe)
                throw std::invalid_argument("tuple entry outside the universe");
            tuple.push_back(e.get<Element>());
        }
        tuples.push_back(std::move(tuple));
    }
    return Relation(universe, k, tuples);
}

Json to_json(const ChippedCubeSpec &spec) {
    Json blocks = Json::array();
    for (const auto &b : spec.blocks)
        blocks.push_back({{"C", to_json(b.C)}, {"D", to_json(b.D)}, {"mult", b.multiplicity}});
    return {{"blocks", blocks}};
}

ChippedCubeSpec chipped_cube_spec_from_json(const Json &json, std::size_t universe) {
    if (!json.is_object() || !json.contains("blocks") || !json["blocks"].is_array())
        throw std::invalid_argument("chipped cube needs blocks");
    ChippedCubeSpec spec;
    for (const auto &b : json["blocks"]) {
        if (!b.is_object() || !b.contains("C") || !b.contains("D")) throw std::invalid_argument("block needs C and D");
        std::size_t mult = 1;
        if (b.contains("mult")) {
            if (!is_count(b["mult"])) throw std::invalid_argument("mult must be a positive integer");
            mult = b["mult"].get<std::size_t>();
        }
        spec.blocks.push_back({set_from_json(b["C"], universe, "C"), set_from_json(b["D"], universe, "D"), mult});
    }
    return spec;
}

Json to_json(const CubeDecision &decision) {
    Json j{{"verdict", to_string(decision.verdict)}, {"dimension_bound", decision.dimension_bound}};
    if (decision.witness_dimension) j["witness_dimension"] = *decision.witness_dimension;
    if (decision.blocker) j["blocker"] = to_json(*decision.blocker);
    if (decision.failing_pair) j["failing_pair"] = {decision.failing_pair->first, decision.failing_pair->second};
    if (!decision.note.empty()) j["note"] = decision.note;
    return j;
}

Json to_json(const NuDecision &decision) {
    Json j{{"verdict", to_string(decision.verdict)}};
    if (decision.arity) j["arity"] = *decision.arity;
    if (decision.minimal_cube_dimension) j["minimal_cube_dimension"] = *decision.minimal_cube_dimension;
    j["cube"] = to_json(decision.cube);
    if (!decision.note.empty()) j["note"] = decision.note;
    return j;
}

}  // namespace cubeterm
