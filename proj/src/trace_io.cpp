#include "scaw/trace_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace scaw {

namespace {

// ---- little-endian scalar packing ----

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

struct Cursor {
    const std::uint8_t* p;
    std::size_t left;

    void need(std::size_t n) const {
        if (n > left)
            throw TruncatedFileError("trace file truncated: expected " +
                                     std::to_string(n) + " more bytes, have " +
                                     std::to_string(left));
    }
    void take(void* dst, std::size_t n) {
        need(n);
        std::memcpy(dst, p, n);
        p += n;
        left -= n;
    }
    std::uint8_t u8() {
        std::uint8_t v;
        take(&v, 1);
        return v;
    }
    std::uint16_t u16() {
        std::uint8_t b[2];
        take(b, 2);
        return static_cast<std::uint16_t>(b[0] | b[1] << 8);
    }
    std::uint32_t u32() {
        std::uint8_t b[4];
        take(b, 4);
        return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
               static_cast<std::uint32_t>(b[2]) << 16 |
               static_cast<std::uint32_t>(b[3]) << 24;
    }
    std::uint64_t u64() {
        std::uint64_t v = u32();
        return v | static_cast<std::uint64_t>(u32()) << 32;
    }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    float f32() {
        std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
};

constexpr char kMagic[4] = {'S', 'C', 'T', 'R'};

} // namespace

std::size_t write_trace_set(const TraceSet& ts, const std::string& path) {
    if (ts.traces.empty())
        throw std::invalid_argument("refusing to write an empty trace set");

    std::vector<std::uint8_t> buf;
    buf.reserve(64 + ts.traces.size() * (32 + 4 * ts.samples_per_trace));
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u16(buf, kTraceFormatVersion);
    buf.push_back(static_cast<std::uint8_t>(ts.cipher));
    buf.push_back(static_cast<std::uint8_t>(ts.config.model));
    buf.push_back(ts.config.bit_index);
    put_u32(buf, static_cast<std::uint32_t>(ts.traces.size()));
    put_u32(buf, ts.samples_per_trace);
    put_u32(buf, ts.config.samples_per_event);
    put_f64(buf, ts.config.alpha);
    put_f64(buf, ts.config.beta);
    put_f64(buf, ts.config.sigma);
    put_u64(buf, ts.config.seed);
    put_u64(buf, ts.key_fingerprint);
    put_u16(buf, static_cast<std::uint16_t>(ts.event_map.size()));
    for (const EventMapEntry& e : ts.event_map) {
        put_u16(buf, static_cast<std::uint16_t>(e.label.size()));
        buf.insert(buf.end(), e.label.begin(), e.label.end());
        put_u32(buf, e.offset);
    }
    std::array<std::uint8_t, 16> wire;
    for (const Trace& t : ts.traces) {
        block_to_wire(t.pt, wire);
        buf.insert(buf.end(), wire.begin(), wire.end());
        block_to_wire(t.ct, wire);
        buf.insert(buf.end(), wire.begin(), wire.end());
        for (float s : t.samples) put_f32(buf, s);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
    return buf.size();
}

TraceSet read_trace_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open for reading: " + path);
    const std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(size));
    if (size > 0) in.read(reinterpret_cast<char*>(buf.data()), size);
    if (!in) throw IoError("read failed: " + path);

    Cursor c{buf.data(), buf.size()};
    char magic[4];
    c.take(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw BadMagicError("bad magic: not an SCTR trace file");
    const std::uint16_t version = c.u16();
    if (version != kTraceFormatVersion)
        throw BadVersionError("unsupported trace format version " +
                              std::to_string(version));

    TraceSet ts;
    const std::uint8_t cipher = c.u8();
    if (cipher > 2)
        throw TraceFormatError("unknown cipher id " + std::to_string(cipher));
    ts.cipher = static_cast<CipherId>(cipher);
    const std::uint8_t model = c.u8();
    if (model > 2)
        throw TraceFormatError("unknown leakage model tag " + std::to_string(model));
    ts.config.model = static_cast<LeakModel>(model);
    ts.config.bit_index = c.u8();
    const std::uint32_t n_traces = c.u32();
    ts.samples_per_trace = c.u32();
    ts.config.samples_per_event = c.u32();
    ts.config.alpha = c.f64();
    ts.config.beta = c.f64();
    ts.config.sigma = c.f64();
    ts.config.seed = c.u64();
    ts.key_fingerprint = c.u64();
    const std::uint16_t n_events = c.u16();
    ts.event_map.reserve(n_events);
    for (std::uint16_t e = 0; e < n_events; ++e) {
        const std::uint16_t len = c.u16();
        EventMapEntry entry;
        entry.label.resize(len);
        c.take(entry.label.data(), len);
        entry.offset = c.u32();
        ts.event_map.push_back(std::move(entry));
    }

    ts.traces.reserve(n_traces);
    std::array<std::uint8_t, 16> wire;
    for (std::uint32_t t = 0; t < n_traces; ++t) {
        Trace tr;
        c.take(wire.data(), 16);
        tr.pt = block_from_wire(wire);
        c.take(wire.data(), 16);
        tr.ct = block_from_wire(wire);
        tr.samples.resize(ts.samples_per_trace);
        for (std::uint32_t s = 0; s < ts.samples_per_trace; ++s)
            tr.samples[s] = c.f32();
        ts.traces.push_back(std::move(tr));
    }
    if (c.left != 0)
        throw TruncatedFileError("trace file length mismatch: " +
                                 std::to_string(c.left) +
                                 " unexpected trailing bytes");
    return ts;
}

void export_csv(const TraceSet& ts, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);

    const std::uint32_t spe = ts.config.samples_per_event;
    bool first = true;
    for (const EventMapEntry& e : ts.event_map) {
        for (std::uint32_t k = 0; k < spe; ++k) {
            if (!first) out << ',';
            first = false;
            out << e.label;
            if (spe > 1) out << '_' << k;
        }
    }
    out << '\n';
    char num[48];
    for (const Trace& t : ts.traces) {
        for (std::size_t j = 0; j < t.samples.size(); ++j) {
            std::snprintf(num, sizeof num, "%.9g", static_cast<double>(t.samples[j]));
            if (j) out << ',';
            out << num;
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void export_csv(const CorrelationMatrix& cm, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);

    out << "guess";
    for (std::size_t j = 0; j < cm.n_samples; ++j)
        out << ",s" << (cm.sample_base + j);
    out << '\n';
    char num[48];
    for (int g = 0; g < 256; ++g) {
        out << g;
        for (std::size_t j = 0; j < cm.n_samples; ++j) {
            if (cm.cell_degenerate(g, j)) {
                out << ",nan";
            } else {
                std::snprintf(num, sizeof num, "%.17g", cm.at(g, j));
                out << ',' << num;
            }
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

} // namespace scaw
