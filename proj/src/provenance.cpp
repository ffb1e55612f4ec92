#include "unselfie/provenance.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

namespace unselfie {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
            throw Error("sha256: digest initialisation failed");
        }
    }

    void update(const char* data, std::size_t n) {
        if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw Error("sha256: update failed");
    }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), digest.data(), &len) != 1) {
            throw Error("sha256: finalisation failed");
        }
        static constexpr char kHex[] = "0123456789abcdef";
        std::string out;
        for (unsigned i = 0; i < len; ++i) {
            out += kHex[digest[i] >> 4];
            out += kHex[digest[i] & 0xF];
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    Sha256 h;
    h.update(bytes.data(), bytes.size());
    return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path.string() + ": cannot open for hashing");
    Sha256 h;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

std::string Provenance::serialize() const {
    std::ostringstream os;
    os << "tool\t" << tool << '\n' << "config_sha256\t" << config_hash << '\n'
       << "seed\t" << seed << '\n';
    for (const auto& [label, hash] : inputs) os << "input\t" << label << '\t' << hash << '\n';
    return os.str();
}

Provenance Provenance::parse(const std::string& text) {
    Provenance p;
    p.tool.clear();
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '\t')) fields.push_back(f);
        if (fields[0] == "tool" && fields.size() == 2) {
            p.tool = fields[1];
        } else if (fields[0] == "config_sha256" && fields.size() == 2) {
            p.config_hash = fields[1];
        } else if (fields[0] == "seed" && fields.size() == 2) {
            p.seed = std::stoull(fields[1]);
        } else if (fields[0] == "input" && fields.size() == 3) {
            p.inputs.emplace_back(fields[1], fields[2]);
        } else {
            throw FormatError("provenance: unrecognised line '" + line + "'");
        }
    }
    return p;
}

Provenance version_stamp(const PipelineConfig& cfg,
                         const std::vector<std::filesystem::path>& inputs) {
    Provenance p;
    p.config_hash = sha256_hex(cfg.serialize());
    p.seed = cfg.seed;
    for (const auto& path : inputs) p.inputs.emplace_back(path.filename().string(), sha256_file(path));
    return p;
}

void write_provenance(const std::filesystem::path& dir, const Provenance& p) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "provenance.txt");
    out << p.serialize();
    if (!out) throw FormatError((dir / "provenance.txt").string() + ": write failed");
}

}  // namespace unselfie
