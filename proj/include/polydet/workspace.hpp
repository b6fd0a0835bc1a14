#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "polydet/errors.hpp"
#include "polydet/tensor.hpp"

namespace polydet {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

/// Binary residue grid: 8-byte magic, u32 version, u32 rank, u64 modulus,
/// rank x u64 axis ids, rank x u64 lengths, then the residues. All integers
/// little-endian, values row-major.
std::string encode_artifact(const ModTensor& t, Residue modulus);
ModTensor decode_artifact(std::string_view bytes, Residue* modulus = nullptr);

inline constexpr std::string_view kArtifactMagic{"PDETGRID", 8};
inline constexpr std::uint32_t kArtifactVersion = 1;

/// On-disk checkpoint store for one run.
///
/// Layout under the root directory:
///   manifest    header (format, input hash, plan hash) plus one
///               "done <key> <file> <checksum>" line per completed unit
///   input.poly  canonical matrix document
///   plan.txt    planning settings needed to rebuild the plan
///   *.bin       residue grids, *.txt text artifacts
///
/// Every artifact and every manifest revision is written to a temporary file,
/// flushed and renamed into place, so an interrupted process leaves either the
/// old or the new state. A unit counts as complete only once the manifest
/// lists it.
class Workspace {
 public:
  /// Creates the workspace or reopens it; an existing manifest whose input or
  /// plan hash differs raises WorkspaceError("stale workspace").
  static Workspace open(const std::filesystem::path& root, std::string_view input_text, std::string_view plan_text);

  /// Reads an existing workspace without validating hashes.
  static Workspace attach(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  std::string input_text() const;
  std::string plan_text() const;
  std::uint64_t input_hash() const { return input_hash_; }
  std::uint64_t plan_hash() const { return plan_hash_; }

  bool done(const std::string& key) const { return entries_.contains(key); }
  std::size_t completed() const { return entries_.size(); }

  void store(const std::string& key, const ModTensor& t, Residue modulus);
  ModTensor load(const std::string& key, Residue expected_modulus) const;

  void store_text(const std::string& key, std::string_view text);
  std::string load_text(const std::string& key) const;

 private:
  struct Entry {
    std::string file;
    std::uint64_t checksum = 0;
  };

  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}
  void commit(const std::string& key, const std::string& file, std::string_view bytes);
  void write_manifest() const;
  void read_manifest();
  std::string read_checked(const std::string& key) const;

  std::filesystem::path root_;
  std::uint64_t input_hash_ = 0;
  std::uint64_t plan_hash_ = 0;
  std::vector<std::string> order_;
  std::map<std::string, Entry> entries_;
};

/// Write-temp, fsync, rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace polydet
