#include "conesta/io.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <vector>

#include <json.hpp>

namespace conesta {

using nlohmann::json;

const char* to_string(IoErrc code) noexcept
{
    switch (code) {
    case IoErrc::open_failed: return "cannot open file";
    case IoErrc::corrupt_header: return "corrupt header";
    case IoErrc::unsupported_version: return "unsupported version";
    case IoErrc::truncated_payload: return "truncated payload";
    case IoErrc::dimension_mismatch: return "dimension mismatch";
    case IoErrc::invalid_payload: return "invalid payload";
    }
    return "unknown error";
}

namespace {

void write_header(std::ostream& out, json header, const char* kind)
{
    header["format"] = kFormatTag;
    header["kind"] = kind;
    out << header.dump() << '\n';
}

json read_header(std::istream& in, const char* kind)
{
    std::string line;
    if (!std::getline(in, line)) throw IoError(IoErrc::corrupt_header, "missing header line");
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object()) {
        throw IoError(IoErrc::corrupt_header, "header is not a JSON object");
    }
    const auto fmt = header.find("format");
    if (fmt == header.end() || !fmt->is_string()) {
        throw IoError(IoErrc::corrupt_header, "missing format tag");
    }
    const std::string tag = fmt->get<std::string>();
    const std::string prefix = "conesta/";
    if (tag.rfind(prefix, 0) != 0) throw IoError(IoErrc::corrupt_header, "bad magic '" + tag + "'");
    if (tag != kFormatTag) throw IoError(IoErrc::unsupported_version, tag);
    const auto k = header.find("kind");
    if (k == header.end() || !k->is_string() || k->get<std::string>() != kind) {
        throw IoError(IoErrc::corrupt_header, std::string("expected a ") + kind + " file");
    }
    return header;
}

template <class T>
T field(const json& header, const char* name)
{
    const auto it = header.find(name);
    if (it == header.end()) throw IoError(IoErrc::corrupt_header, std::string("missing '") + name + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw IoError(IoErrc::corrupt_header, std::string("bad '") + name + "'");
    }
}

std::size_t positive_count(const json& header, const char* name)
{
    const auto it = header.find(name);
    if (it == header.end() || !it->is_number_unsigned() || it->get<std::uint64_t>() == 0) {
        throw IoError(IoErrc::corrupt_header, std::string("'") + name + "' must be a positive integer");
    }
    return it->get<std::size_t>();
}

void put_f64(std::string& buf, double v)
{
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
        buf.push_back(static_cast<char>(bits & 0xffu));
        bits >>= 8;
    }
}

std::string read_exact(std::istream& in, std::size_t bytes)
{
    std::string buf(bytes, '\0');
    in.read(buf.data(), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in.gcount()) != bytes) {
        throw IoError(IoErrc::truncated_payload,
                      "expected " + std::to_string(bytes) + " bytes, got " + std::to_string(in.gcount()));
    }
    return buf;
}

void expect_eof(std::istream& in)
{
    if (in.peek() != std::char_traits<char>::eof()) {
        throw IoError(IoErrc::dimension_mismatch, "trailing bytes after payload");
    }
}

double get_f64(const std::string& buf, std::size_t pos)
{
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) {
        bits = (bits << 8) | static_cast<unsigned char>(buf[pos + static_cast<std::size_t>(b)]);
    }
    return std::bit_cast<double>(bits);
}

Eigen::VectorXd read_f64_vector(std::istream& in, std::size_t count)
{
    const std::string buf = read_exact(in, 8 * count);
    Eigen::VectorXd v(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) v[static_cast<Eigen::Index>(i)] = get_f64(buf, 8 * i);
    return v;
}

void write_f64_vector(std::ostream& out, const Eigen::VectorXd& v)
{
    std::string buf;
    buf.reserve(8 * static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) put_f64(buf, v[i]);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

template <class Fn>
auto with_input(const std::filesystem::path& path, Fn&& fn)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoErrc::open_failed, path.string());
    return fn(in);
}

template <class Fn>
void with_output(const std::filesystem::path& path, Fn&& fn)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoErrc::open_failed, path.string());
    fn(out);
    out.flush();
    if (!out) throw IoError(IoErrc::open_failed, "write failed: " + path.string());
}

json to_json(const PenaltyWeights& w)
{
    return {{"l2", w.l2}, {"l1", w.l1}, {"tv", w.tv}};
}

json to_json(const ContinuationRun& r)
{
    return {{"eps", r.eps},
            {"mu", r.mu},
            {"step_size", r.step_size},
            {"tol", r.tol},
            {"inner_iterations", r.inner_iterations},
            {"converged", r.converged},
            {"objective_smoothed", r.objective_smoothed},
            {"objective_exact", r.objective_exact}};
}

} // namespace

void write_volume(std::ostream& out, const MaskedVolume& vol)
{
    const Dims& d = vol.dims();
    write_header(out, {{"dims", {d.nx, d.ny, d.nz}}, {"order", "x-fastest"}, {"count", vol.size()}},
                 "mask");
    out.write(reinterpret_cast<const char*>(vol.mask().data()),
              static_cast<std::streamsize>(vol.mask().size()));
}

MaskedVolume read_volume(std::istream& in)
{
    const json header = read_header(in, "mask");
    const auto dims = field<std::vector<std::size_t>>(header, "dims");
    if (dims.size() != 3 || dims[0] == 0 || dims[1] == 0 || dims[2] == 0) {
        throw IoError(IoErrc::corrupt_header, "'dims' must hold three positive integers");
    }
    if (field<std::string>(header, "order") != "x-fastest") {
        throw IoError(IoErrc::corrupt_header, "only x-fastest voxel order is supported");
    }
    const std::size_t count = positive_count(header, "count");
    const Dims d{dims[0], dims[1], dims[2]};
    const std::string buf = read_exact(in, d.total());
    expect_eof(in);
    std::vector<std::uint8_t> mask(buf.begin(), buf.end());
    std::size_t ones = 0;
    for (auto b : mask) {
        if (b > 1) throw IoError(IoErrc::invalid_payload, "mask bytes must be 0 or 1");
        ones += b;
    }
    if (ones != count) {
        throw IoError(IoErrc::dimension_mismatch, "header count " + std::to_string(count) +
                                                       " but mask has " + std::to_string(ones) + " voxels");
    }
    return MaskedVolume(d, std::move(mask));
}

void write_dataset(std::ostream& out, const Dataset& data)
{
    data.validate();
    write_header(out, {{"n", data.samples()}, {"p", data.features()}, {"label_name", data.label_name}},
                 "dataset");
    std::string buf;
    buf.reserve(8 * data.samples() * data.features() + data.samples());
    for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.x.cols(); ++j) put_f64(buf, data.x(i, j));
    }
    for (Eigen::Index i = 0; i < data.y.size(); ++i) buf.push_back(data.y[i] == 1.0 ? 1 : 0);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Dataset read_dataset(std::istream& in)
{
    const json header = read_header(in, "dataset");
    const std::size_t n = positive_count(header, "n");
    const std::size_t p = positive_count(header, "p");
    Dataset data;
    data.label_name = field<std::string>(header, "label_name");
    const std::string xbuf = read_exact(in, 8 * n * p);
    const std::string ybuf = read_exact(in, n);
    expect_eof(in);
    data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            data.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                get_f64(xbuf, 8 * (i * p + j));
        }
    }
    data.y.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = static_cast<unsigned char>(ybuf[i]);
        if (b > 1) throw IoError(IoErrc::invalid_payload, "labels must be 0 or 1");
        data.y[static_cast<Eigen::Index>(i)] = b;
    }
    return data;
}

void write_truth(std::ostream& out, const GroundTruth& truth)
{
    write_header(out, {{"p", truth.beta_true.size()}}, "truth");
    write_f64_vector(out, truth.beta_true);
}

GroundTruth read_truth(std::istream& in)
{
    const json header = read_header(in, "truth");
    const std::size_t p = positive_count(header, "p");
    Eigen::VectorXd beta = read_f64_vector(in, p);
    expect_eof(in);
    return GroundTruth::from_beta(std::move(beta));
}

void write_model(std::ostream& out, const ModelFile& model)
{
    const auto& fit = model.fit;
    const auto p = static_cast<std::size_t>(fit.beta.size());
    json runs = json::array();
    for (const auto& r : fit.runs) runs.push_back(to_json(r));
    json header = {
        {"p", p},
        {"weights", to_json(model.weights)},
        {"target_eps", model.target_eps},
        {"seed", model.seed},
        {"init", std::string(to_string(model.init))},
        {"constants",
         {{"L0", fit.constants.lipschitz_smooth},
          {"spectral_norm_A", fit.constants.spectral_norm_a},
          {"spectral_norm_X", fit.constants.spectral_norm_x}}},
        {"runs", std::move(runs)},
        {"total_inner_iterations", fit.total_inner_iterations},
        {"standardized", model.standardization.has_value()},
    };
    if (model.standardization) {
        if (static_cast<std::size_t>(model.standardization->mean.size()) != p ||
            static_cast<std::size_t>(model.standardization->scale.size()) != p) {
            throw InvalidArgument("standardization length does not match p");
        }
    }
    write_header(out, std::move(header), "model");
    write_f64_vector(out, fit.beta);
    if (model.standardization) {
        write_f64_vector(out, model.standardization->mean);
        write_f64_vector(out, model.standardization->scale);
    }
}

ModelFile read_model(std::istream& in)
{
    const json header = read_header(in, "model");
    const std::size_t p = positive_count(header, "p");
    ModelFile model;
    try {
        const json& w = header.at("weights");
        model.weights = {w.at("l2").get<double>(), w.at("l1").get<double>(), w.at("tv").get<double>()};
        model.target_eps = header.at("target_eps").get<double>();
        model.seed = header.at("seed").get<std::uint64_t>();
        model.init = parse_init_mode(header.at("init").get<std::string>());
        const json& c = header.at("constants");
        model.fit.constants = {c.at("L0").get<double>(), c.at("spectral_norm_A").get<double>(),
                               c.at("spectral_norm_X").get<double>()};
        for (const json& r : header.at("runs")) {
            ContinuationRun run;
            run.eps = r.at("eps").get<double>();
            run.mu = r.at("mu").get<double>();
            run.step_size = r.at("step_size").get<double>();
            run.tol = r.at("tol").get<double>();
            run.inner_iterations = r.at("inner_iterations").get<std::size_t>();
            run.converged = r.at("converged").get<bool>();
            run.objective_smoothed = r.at("objective_smoothed").get<double>();
            run.objective_exact = r.at("objective_exact").get<double>();
            model.fit.runs.push_back(run);
        }
        model.fit.total_inner_iterations = header.at("total_inner_iterations").get<std::size_t>();
    } catch (const json::exception& e) {
        throw IoError(IoErrc::corrupt_header, e.what());
    } catch (const InvalidArgument& e) {
        throw IoError(IoErrc::corrupt_header, e.what());
    }
    const bool standardized = field<bool>(header, "standardized");
    model.fit.beta = read_f64_vector(in, p);
    if (standardized) {
        Standardization s;
        s.mean = read_f64_vector(in, p);
        s.scale = read_f64_vector(in, p);
        model.standardization = std::move(s);
    }
    expect_eof(in);
    return model;
}

void write_volume(const std::filesystem::path& path, const MaskedVolume& vol)
{
    with_output(path, [&](std::ostream& out) { write_volume(out, vol); });
}

MaskedVolume read_volume(const std::filesystem::path& path)
{
    return with_input(path, [](std::istream& in) { return read_volume(in); });
}

void write_dataset(const std::filesystem::path& path, const Dataset& data)
{
    with_output(path, [&](std::ostream& out) { write_dataset(out, data); });
}

Dataset read_dataset(const std::filesystem::path& path)
{
    return with_input(path, [](std::istream& in) { return read_dataset(in); });
}

void write_truth(const std::filesystem::path& path, const GroundTruth& truth)
{
    with_output(path, [&](std::ostream& out) { write_truth(out, truth); });
}

GroundTruth read_truth(const std::filesystem::path& path)
{
    return with_input(path, [](std::istream& in) { return read_truth(in); });
}

void write_model(const std::filesystem::path& path, const ModelFile& model)
{
    with_output(path, [&](std::ostream& out) { write_model(out, model); });
}

ModelFile read_model(const std::filesystem::path& path)
{
    return with_input(path, [](std::istream& in) { return read_model(in); });
}

} // namespace conesta
