#pragma once

#include "architect/types.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace architect {

struct AssetRecord {
    std::string asset_id;
    std::string name;
    std::string description;
    Vec3 mesh_bbox{1, 1, 1};  // meters
    Eigen::VectorXd text_embedding;
    Eigen::VectorXd image_embedding;
    std::string mesh_path;  // optional
};

struct SelectionScore {
    double scale_term = 0;  // L1 over aspect-normalized dims
    double embed_term = 0;  // cosine, 0 when no crop embedding
    double combined = 0;    // embed_term - lambda * scale_term
};

// Deterministic stand-in for a text/image encoder: tokens hashed into a unit
// vector, so retrieval tests run offline.
Eigen::VectorXd mock_embedding(const std::string& text, std::uint64_t seed = 0, int dims = 64);

class AssetCatalog {
  public:
    using Embedder = std::function<Eigen::VectorXd(const std::string&)>;

    AssetCatalog() = default;
    explicit AssetCatalog(std::vector<AssetRecord> records, std::uint64_t embed_seed = 0);

    // One JSON record per line; embeddings are base64 float32 arrays and must
    // be unit norm within 1e-6.
    static AssetCatalog load(const std::string& path, std::uint64_t embed_seed = 0);
    void save(const std::string& path) const;

    const std::vector<AssetRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    const AssetRecord* find(const std::string& asset_id) const;

    // Text encoder used for query descriptions (mock by default).
    void set_embedder(Embedder e) { embedder_ = std::move(e); }
    Eigen::VectorXd embed_text(const std::string& text) const;

  private:
    std::vector<AssetRecord> records_;
    Embedder embedder_;
};

// Top-k records by text-embedding cosine similarity, ties by asset_id.
// Throws on an empty catalog.
std::vector<AssetRecord> retrieve_candidates(const std::string& description,
                                             const AssetCatalog& catalog, int k);

// Final pick: combined = cosine(crop, image_embedding) - lambda * L1 between
// aspect-normalized dims (each divided by its max component, so the global
// depth-scale error cancels). No crop embedding means pure scale matching.
const AssetRecord& select_asset(const std::vector<AssetRecord>& candidates,
                                const Vec3& target_bbox_dims,
                                const std::optional<Eigen::VectorXd>& crop_embedding,
                                double lambda, SelectionScore* score_out = nullptr);

}  // namespace architect
