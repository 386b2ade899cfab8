#include <json.hpp>

#include "completeness/classifier.hpp"

namespace completeness {

namespace {

using nlohmann::ordered_json;

ordered_json witness_json(const Witness& w) {
    return std::visit(
        [](const auto& v) -> ordered_json {
            using W = std::decay_t<decltype(v)>;
            ordered_json j;
            if constexpr (std::is_same_v<W, GapWitness>) {
                j["kind"] = "gap";
                j["m"] = v.m.get_str();
                j["r"] = v.r;
            } else if constexpr (std::is_same_v<W, FolkmanChain>) {
                j["kind"] = "folkman_chain";
                j["m"] = v.m.get_str();
                j["r"] = v.r;
                j["chain"] = ordered_json::array();
                for (const auto& c : v.chain) j["chain"].push_back(c.get_str());
            } else if constexpr (std::is_same_v<W, DoublingCert>) {
                j["kind"] = "doubling";
                j["r"] = v.r;
                j["prefix_check"] = v.prefix_check;
            } else if constexpr (std::is_same_v<W, RunCert>) {
                j["kind"] = "run";
                j["r"] = v.r;
                j["X"] = v.x;
            } else if constexpr (std::is_same_v<W, BlockCert>) {
                j["kind"] = "block";
                j["v"] = v.v.get_str();
                j["w"] = v.w.get_str();
                j["X"] = v.x.get_str();
                j["r"] = v.r;
            } else if constexpr (std::is_same_v<W, ExternalRef>) {
                j["kind"] = "external";
                j["note"] = v.note;
            } else {
                j["kind"] = "none";
            }
            return j;
        },
        w);
}

}  // namespace

std::string classification_to_json(const Classification& c) {
    ordered_json j;
    j["verdict"] = to_string(c.verdict);
    j["witness"] = witness_json(c.witness);
    j["provenance"] = to_string(c.provenance);
    return j.dump();
}

}  // namespace completeness
