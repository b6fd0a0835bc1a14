#include "polydet/workspace.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace polydet {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}
  std::uint64_t get(int width) {
    if (pos_ + width > bytes_.size()) throw WorkspaceError("checkpoint invalid: truncated artifact");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += width;
    return v;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string file_for(const std::string& key, std::string_view ext) {
  std::string name = key;
  for (char& c : name)
    if (c == '/') c = '_';
  return name + std::string(ext);
}

[[noreturn]] void io_error(const std::string& what, const fs::path& path) {
  throw WorkspaceError(what + " " + path.string() + ": " + std::strerror(errno));
}

}  // namespace

std::string encode_artifact(const ModTensor& t, Residue modulus) {
  std::string out(kArtifactMagic);
  put_u32(out, kArtifactVersion);
  put_u32(out, static_cast<std::uint32_t>(t.rank()));
  put_u64(out, modulus);
  for (std::size_t a : t.axes()) put_u64(out, a);
  for (std::size_t n : t.shape()) put_u64(out, n);
  out.reserve(out.size() + 8 * t.size());
  for (Residue v : t.data()) put_u64(out, v);
  return out;
}

ModTensor decode_artifact(std::string_view bytes, Residue* modulus) {
  if (bytes.substr(0, kArtifactMagic.size()) != kArtifactMagic)
    throw WorkspaceError("checkpoint invalid: bad artifact magic");
  Reader in(bytes.substr(kArtifactMagic.size()));
  if (in.get(4) != kArtifactVersion) throw WorkspaceError("checkpoint invalid: unsupported artifact version");
  const auto rank = static_cast<std::size_t>(in.get(4));
  const Residue mod = in.get(8);
  if (rank > 64) throw WorkspaceError("checkpoint invalid: bad artifact rank");
  std::vector<std::size_t> axes(rank);
  Shape shape(rank);
  for (auto& a : axes) a = in.get(8);
  for (auto& n : shape) n = in.get(8);
  const std::size_t count = shape_size(shape);
  if (in.remaining() != 8 * count) throw WorkspaceError("checkpoint invalid: artifact size mismatch");
  std::vector<Residue> values(count);
  for (auto& v : values) {
    v = in.get(8);
    if (v >= mod) throw WorkspaceError("checkpoint invalid: residue out of range");
  }
  if (modulus) *modulus = mod;
  return ModTensor(std::move(shape), std::move(axes), std::move(values));
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) io_error("cannot create", tmp);
  std::size_t written = 0;
  while (written < bytes.size()) {
    const ssize_t n = ::write(fd, bytes.data() + written, bytes.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      io_error("cannot write", tmp);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    io_error("cannot sync", tmp);
  }
  ::close(fd);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw WorkspaceError("cannot rename " + tmp.string() + ": " + ec.message());
  const int dir = ::open(path.parent_path().empty() ? "." : path.parent_path().c_str(), O_RDONLY);
  if (dir >= 0) {
    ::fsync(dir);
    ::close(dir);
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WorkspaceError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Workspace Workspace::open(const fs::path& root, std::string_view input_text, std::string_view plan_text) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw WorkspaceError("cannot create workspace " + root.string() + ": " + ec.message());

  Workspace ws(root);
  const std::uint64_t input_hash = fnv1a(input_text);
  const std::uint64_t plan_hash = fnv1a(plan_text, input_hash);
  if (fs::exists(root / "manifest")) {
    ws.read_manifest();
    if (ws.input_hash_ != input_hash || ws.plan_hash_ != plan_hash) throw WorkspaceError("stale workspace");
    return ws;
  }
  ws.input_hash_ = input_hash;
  ws.plan_hash_ = plan_hash;
  write_file_atomic(root / "input.poly", input_text);
  write_file_atomic(root / "plan.txt", plan_text);
  ws.write_manifest();
  return ws;
}

Workspace Workspace::attach(const fs::path& root) {
  if (!fs::exists(root / "manifest")) throw WorkspaceError("no workspace manifest in " + root.string());
  Workspace ws(root);
  ws.read_manifest();
  if (fnv1a(ws.input_text()) != ws.input_hash_) throw WorkspaceError("stale workspace");
  return ws;
}

std::string Workspace::input_text() const { return read_file(root_ / "input.poly"); }
std::string Workspace::plan_text() const { return read_file(root_ / "plan.txt"); }

void Workspace::write_manifest() const {
  std::ostringstream os;
  os << "polydet-workspace 1\n";
  os << "input " << hex(input_hash_) << '\n';
  os << "plan " << hex(plan_hash_) << '\n';
  for (const auto& key : order_) {
    const Entry& e = entries_.at(key);
    os << "done " << key << ' ' << e.file << ' ' << hex(e.checksum) << '\n';
  }
  write_file_atomic(root_ / "manifest", os.str());
}

void Workspace::read_manifest() {
  std::istringstream in(read_file(root_ / "manifest"));
  std::string line;
  if (!std::getline(in, line) || line != "polydet-workspace 1") throw WorkspaceError("checkpoint invalid: bad manifest");
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "input" || tag == "plan") {
      std::string h;
      fields >> h;
      (tag == "input" ? input_hash_ : plan_hash_) = std::stoull(h, nullptr, 16);
    } else if (tag == "done") {
      std::string key, file, sum;
      if (!(fields >> key >> file >> sum)) throw WorkspaceError("checkpoint invalid: bad manifest line");
      if (!entries_.contains(key)) order_.push_back(key);
      entries_[key] = {file, std::stoull(sum, nullptr, 16)};
    } else if (!tag.empty()) {
      throw WorkspaceError("checkpoint invalid: unknown manifest tag '" + tag + "'");
    }
  }
}

void Workspace::commit(const std::string& key, const std::string& file, std::string_view bytes) {
  write_file_atomic(root_ / file, bytes);
  if (!entries_.contains(key)) order_.push_back(key);
  entries_[key] = {file, fnv1a(bytes)};
  write_manifest();
}

std::string Workspace::read_checked(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw WorkspaceError("checkpoint invalid: no artifact for " + key);
  std::string bytes = read_file(root_ / it->second.file);
  if (fnv1a(bytes) != it->second.checksum) throw WorkspaceError("checkpoint invalid: checksum mismatch for " + key);
  return bytes;
}

void Workspace::store(const std::string& key, const ModTensor& t, Residue modulus) {
  commit(key, file_for(key, ".bin"), encode_artifact(t, modulus));
}

ModTensor Workspace::load(const std::string& key, Residue expected_modulus) const {
  Residue modulus = 0;
  ModTensor t = decode_artifact(read_checked(key), &modulus);
  if (modulus != expected_modulus) throw WorkspaceError("checkpoint invalid: modulus mismatch for " + key);
  return t;
}

void Workspace::store_text(const std::string& key, std::string_view text) { commit(key, file_for(key, ".txt"), text); }

std::string Workspace::load_text(const std::string& key) const { return read_checked(key); }

}  // namespace polydet
