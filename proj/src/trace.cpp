#include <rover/trace.hpp>

#include <rover/errors.hpp>
#include <rover/format.hpp>

#include <fstream>
#include <sstream>

namespace rover {
namespace {

const char* kHeader =
    "t,pos_x,pos_y,pos_z,quat_w,quat_x,quat_y,quat_z,rocker_angle,"
    "s_fl,s_fr,s_rl,s_rr,fn_fl,fn_fr,fn_rl,fn_rr,"
    "strut_fl,strut_fr,strut_rl,strut_rr,pivot_torque,accel_g,"
    "vel_x,vel_y,vel_z,attach_fz_fl,attach_fz_fr,attach_fz_rl,attach_fz_rr,"
    "pivot_torque_left,pivot_torque_right,wheel_x_fl,wheel_x_fr,wheel_x_rl,wheel_x_rr,"
    "attach_ty_fl,attach_ty_fr,attach_ty_rl,attach_ty_rr";

} // namespace

void write_trace_csv(const SimulationTrace& trace, const std::string& path, int stride) {
    if (stride < 1) stride = 1;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
    out << kHeader << '\n';
    for (std::size_t n = 0; n < trace.records.size(); n += stride) {
        const TraceRecord& rec = trace.records[n];
        const RoverState& s = rec.state;
        std::string line;
        line.reserve(512);
        auto push = [&line](scalar_t v) {
            line += format_number(v);
            line += ',';
        };
        push(s.time);
        push(s.position.x());
        push(s.position.y());
        push(s.position.z());
        push(s.orientation.w());
        push(s.orientation.x());
        push(s.orientation.y());
        push(s.orientation.z());
        push(s.rocker_angle);
        for (int i = 0; i < kWheelCount; ++i) push(s.strut_travel[i]);
        for (int i = 0; i < kWheelCount; ++i) push(rec.normal_force[i]);
        for (int i = 0; i < kWheelCount; ++i) push(rec.strut_force[i]);
        push(rec.pivot_torque());
        push(rec.vertical_acceleration_g);
        push(s.linear_velocity.x());
        push(s.linear_velocity.y());
        push(s.linear_velocity.z());
        for (int i = 0; i < kWheelCount; ++i) push(rec.attachment_vertical_force[i]);
        push(rec.pivot_torque_left);
        push(rec.pivot_torque_right);
        for (int i = 0; i < kWheelCount; ++i) push(rec.wheel_x[i]);
        for (int i = 0; i < kWheelCount; ++i) push(rec.attachment_pitch_torque[i]);
        line.pop_back();  // trailing comma
        out << line << '\n';
    }
}

SimulationTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    SimulationTrace trace;
    std::string line;
    if (!std::getline(in, line)) throw EmptyTrace("trace file has no header: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 36) {
            throw std::runtime_error("malformed trace row in " + path);
        }
        auto value = [&fields](int i) { return std::stod(fields[i]); };
        TraceRecord rec;
        RoverState& s = rec.state;
        s.time = value(0);
        s.position = vec3_t(value(1), value(2), value(3));
        s.orientation = quat_t(value(4), value(5), value(6), value(7));
        s.rocker_angle = value(8);
        for (int i = 0; i < kWheelCount; ++i) s.strut_travel[i] = value(9 + i);
        for (int i = 0; i < kWheelCount; ++i) {
            rec.normal_force[i] = value(13 + i);
            rec.in_contact[i] = rec.normal_force[i] > 0.0;
        }
        for (int i = 0; i < kWheelCount; ++i) rec.strut_force[i] = value(17 + i);
        rec.vertical_acceleration_g = value(22);
        s.linear_velocity = vec3_t(value(23), value(24), value(25));
        for (int i = 0; i < kWheelCount; ++i) rec.attachment_vertical_force[i] = value(26 + i);
        rec.pivot_torque_left = value(30);
        rec.pivot_torque_right = value(31);
        for (int i = 0; i < kWheelCount; ++i) rec.wheel_x[i] = value(32 + i);
        if (fields.size() >= 40) {
            for (int i = 0; i < kWheelCount; ++i) {
                rec.attachment_pitch_torque[i] = value(36 + i);
            }
        }
        trace.records.push_back(rec);
    }
    if (trace.records.size() >= 2) {
        trace.dt = trace.records[1].state.time - trace.records[0].state.time;
    }
    return trace;
}

} // namespace rover
