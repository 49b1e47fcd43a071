#include "cotransport/sim/trace.hpp"

#include "cotransport/errors.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace cotransport::sim {

namespace {

class RowWriter {
public:
    explicit RowWriter(std::ostream& os) : os_(os) {}

    void add(double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        sep();
        os_.write(buf, res.ptr - buf);
    }
    template <typename Derived>
    void add(const Eigen::MatrixBase<Derived>& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) add(v(i));
    }
    void add(const Pose& p) {
        add(p.position);
        add(p.orientation.w());
        add(p.orientation.x());
        add(p.orientation.y());
        add(p.orientation.z());
    }
    void end() {
        os_.put('\n');
        first_ = true;
    }

private:
    void sep() {
        if (!first_) os_.put(',');
        first_ = false;
    }
    std::ostream& os_;
    bool first_ = true;
};

void pose_columns(std::vector<std::string>& h, const std::string& prefix) {
    for (const char* s : {"px", "py", "pz", "qw", "qx", "qy", "qz"}) h.push_back(prefix + "_" + s);
}

void xyz_columns(std::vector<std::string>& h, const std::string& prefix) {
    for (const char* s : {"x", "y", "z"}) h.push_back(prefix + "_" + s);
}

}  // namespace

std::vector<std::string> trace_header(int dofs) {
    std::vector<std::string> h{"t"};
    for (int i = 0; i < dofs; ++i) h.push_back("q" + std::to_string(i));
    pose_columns(h, "ee");
    for (const char* s : {"ee_vx", "ee_vy", "ee_vz", "ee_wx", "ee_wy", "ee_wz"}) h.emplace_back(s);
    xyz_columns(h, "force");
    xyz_columns(h, "v_adm");
    xyz_columns(h, "v_h");
    h.emplace_back("alpha");
    h.emplace_back("zeta");
    pose_columns(h, "xd");
    pose_columns(h, "hand");
    h.emplace_back("torso_yaw");
    h.emplace_back("torso_yaw_rate");
    h.emplace_back("hand_yaw");
    return h;
}

void write_trace(std::ostream& os, const Trace& trace) {
    const int dofs = trace.empty() ? 0 : static_cast<int>(trace.front().q.size());
    const auto header = trace_header(dofs);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    RowWriter w(os);
    for (const auto& r : trace) {
        w.add(r.t);
        w.add(r.q);
        w.add(r.ee_pose);
        w.add(r.ee_twist.to_vector());
        w.add(r.force);
        w.add(r.v_adm);
        w.add(r.v_h);
        w.add(r.alpha);
        w.add(r.zeta ? 1.0 : 0.0);
        w.add(r.x_d);
        w.add(r.hand_pose);
        w.add(r.torso_yaw);
        w.add(r.torso_yaw_rate);
        w.add(r.hand_yaw);
        w.end();
    }
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw RuntimeError("cannot open trace for writing: " + path.string());
    write_trace(os, trace);
    os.flush();
    if (!os) throw RuntimeError("failed writing trace: " + path.string());
}

}  // namespace cotransport::sim
