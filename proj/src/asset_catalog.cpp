#include "architect/asset_catalog.hpp"

#include "architect/base64.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>

namespace architect {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

std::string encode_floats(const Eigen::VectorXd& v) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(v.size()) * 4);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        float f = static_cast<float>(v[i]);
        std::memcpy(bytes.data() + 4 * i, &f, 4);
    }
    return base64_encode(bytes);
}

Eigen::VectorXd decode_floats(const std::string& b64) {
    auto bytes = base64_decode(b64);
    if (bytes.size() % 4 != 0) throw ParseError("embedding: byte count not a multiple of 4");
    Eigen::VectorXd v(static_cast<Eigen::Index>(bytes.size() / 4));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        float f;
        std::memcpy(&f, bytes.data() + 4 * i, 4);
        v[i] = f;
    }
    return v;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size() || a.size() == 0) return 0.0;
    double na = a.norm(), nb = b.norm();
    if (na < 1e-12 || nb < 1e-12) return 0.0;
    return a.dot(b) / (na * nb);
}

void check_unit(const AssetRecord& r, const Eigen::VectorXd& v, const char* which) {
    if (v.size() == 0) throw ValidationError(r.asset_id + ": missing " + which + " embedding");
    if (std::abs(v.norm() - 1.0) > 1e-6)
        throw ValidationError(r.asset_id + ": " + which + " embedding is not unit norm");
}

}  // namespace

Eigen::VectorXd mock_embedding(const std::string& text, std::uint64_t seed, int dims) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dims);
    auto tokens = tokenize(text);
    if (tokens.empty()) tokens.push_back("empty");
    for (const auto& tok : tokens) {
        std::uint64_t state = fnv1a(tok) ^ (seed * 0x9e3779b97f4a7c15ull + 1);
        for (int d = 0; d < dims; ++d) {
            std::uint64_t r = splitmix64(state);
            v[d] += (static_cast<double>(r >> 11) / 9007199254740992.0) * 2.0 - 1.0;
        }
    }
    double n = v.norm();
    if (n < 1e-12) {
        v.setZero();
        v[0] = 1.0;
        return v;
    }
    return v / n;
}

AssetCatalog::AssetCatalog(std::vector<AssetRecord> records, std::uint64_t embed_seed)
    : records_(std::move(records)) {
    for (const auto& r : records_) {
        check_unit(r, r.text_embedding, "text");
        check_unit(r, r.image_embedding, "image");
    }
    embedder_ = [embed_seed, dims = records_.empty() ? 64
                                                     : static_cast<int>(
                                                           records_.front().text_embedding.size())](
                    const std::string& text) { return mock_embedding(text, embed_seed, dims); };
}

AssetCatalog AssetCatalog::load(const std::string& path, std::uint64_t embed_seed) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open catalog: " + path);
    std::vector<AssetRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("catalog line " + std::to_string(lineno) + ": " + e.what());
        }
        AssetRecord r;
        r.asset_id = j.at("asset_id").get<std::string>();
        r.name = j.at("name").get<std::string>();
        r.description = j.at("description").get<std::string>();
        auto bb = j.at("mesh_bbox");
        r.mesh_bbox = {bb.at(0).get<double>(), bb.at(1).get<double>(), bb.at(2).get<double>()};
        if (!(r.mesh_bbox.array() > 0).all())
            throw ValidationError(r.asset_id + ": mesh bbox must be positive");
        r.text_embedding = decode_floats(j.at("text_embedding").get<std::string>());
        r.image_embedding = decode_floats(j.at("image_embedding").get<std::string>());
        r.mesh_path = j.value("mesh_path", "");
        records.push_back(std::move(r));
    }
    return AssetCatalog(std::move(records), embed_seed);
}

void AssetCatalog::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    for (const auto& r : records_) {
        nlohmann::ordered_json j;
        j["asset_id"] = r.asset_id;
        j["name"] = r.name;
        j["description"] = r.description;
        j["mesh_bbox"] = {r.mesh_bbox.x(), r.mesh_bbox.y(), r.mesh_bbox.z()};
        j["text_embedding"] = encode_floats(r.text_embedding);
        j["image_embedding"] = encode_floats(r.image_embedding);
        if (!r.mesh_path.empty()) j["mesh_path"] = r.mesh_path;
        out << j.dump() << '\n';
    }
}

const AssetRecord* AssetCatalog::find(const std::string& asset_id) const {
    for (const auto& r : records_)
        if (r.asset_id == asset_id) return &r;
    return nullptr;
}

Eigen::VectorXd AssetCatalog::embed_text(const std::string& text) const {
    if (!embedder_) throw ServiceError("no text embedder configured");
    return embedder_(text);
}

std::vector<AssetRecord> retrieve_candidates(const std::string& description,
                                             const AssetCatalog& catalog, int k) {
    if (catalog.empty()) throw Error("retrieve_candidates: empty catalog");
    Eigen::VectorXd query = catalog.embed_text(description);
    std::vector<std::pair<double, const AssetRecord*>> scored;
    scored.reserve(catalog.records().size());
    for (const auto& r : catalog.records()) scored.emplace_back(cosine(query, r.text_embedding), &r);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->asset_id < b.second->asset_id;
    });
    std::vector<AssetRecord> out;
    for (const auto& [s, r] : scored) {
        if (static_cast<int>(out.size()) >= k) break;
        out.push_back(*r);
    }
    return out;
}

namespace {
Vec3 aspect_normalize(const Vec3& dims) {
    double m = dims.maxCoeff();
    if (!(m > 0)) throw GeometryError("aspect_normalize: nonpositive dims");
    return dims / m;
}
}  // namespace

const AssetRecord& select_asset(const std::vector<AssetRecord>& candidates,
                                const Vec3& target_bbox_dims,
                                const std::optional<Eigen::VectorXd>& crop_embedding,
                                double lambda, SelectionScore* score_out) {
    if (candidates.empty()) throw Error("select_asset: no candidates");
    Vec3 target_norm = aspect_normalize(target_bbox_dims);

    const AssetRecord* best = nullptr;
    SelectionScore best_score;
    for (const auto& c : candidates) {
        SelectionScore s;
        s.scale_term = (aspect_normalize(c.mesh_bbox) - target_norm).cwiseAbs().sum();
        s.embed_term = crop_embedding ? cosine(*crop_embedding, c.image_embedding) : 0.0;
        s.combined = s.embed_term - lambda * s.scale_term;
        if (!best || s.combined > best_score.combined ||
            (s.combined == best_score.combined && c.asset_id < best->asset_id)) {
            best = &c;
            best_score = s;
        }
    }
    if (score_out) *score_out = best_score;
    return *best;
}

}  // namespace architect
