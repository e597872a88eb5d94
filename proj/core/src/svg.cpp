#include "relspec/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace relspec {

namespace {

struct Box {
    double x0, x1, y0, y1;
    void grow(cplx z) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
};

class Canvas {
public:
    Canvas(const std::string& path, Box box) : path_(path), box_(box) {
        const double w = box.x1 - box.x0, h = box.y1 - box.y0;
        const double pad = 0.05 * std::max(w, h);
        box_.x0 -= pad; box_.x1 += pad; box_.y0 -= pad; box_.y1 += pad;
        scale_ = kWidth / (box_.x1 - box_.x0);
        height_ = (box_.y1 - box_.y0) * scale_;
        out_ << std::setprecision(10);
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
             << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << kWidth << " "
             << height_ << "\">\n";
        out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    double X(double x) const { return (x - box_.x0) * scale_; }
    double Y(double y) const { return height_ - (y - box_.y0) * scale_; }
    double S(double r) const { return r * scale_; }

    void circle_outline(cplx c, double r, const std::string& color, bool dashed) {
        out_ << "<circle cx=\"" << X(c.real()) << "\" cy=\"" << Y(c.imag())
             << "\" r=\"" << S(r) << "\" fill=\"none\" stroke=\"" << color
             << "\" stroke-width=\"1.2\"";
        if (dashed) out_ << " stroke-dasharray=\"5 4\"";
        out_ << "/>\n";
    }

    void line(cplx a, cplx b, const std::string& color, double width) {
        out_ << "<line x1=\"" << X(a.real()) << "\" y1=\"" << Y(a.imag())
             << "\" x2=\"" << X(b.real()) << "\" y2=\"" << Y(b.imag())
             << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    }

    void dot(cplx z, double px, const std::string& color) {
        out_ << "<circle cx=\"" << X(z.real()) << "\" cy=\"" << Y(z.imag())
             << "\" r=\"" << px << "\" fill=\"" << color << "\" fill-opacity=\"0.8\"/>\n";
    }

    void label(double px, double py, const std::string& text, const std::string& color) {
        out_ << "<text x=\"" << px << "\" y=\"" << py << "\" font-size=\"13\" "
             << "font-family=\"sans-serif\" fill=\"" << color << "\">" << text
             << "</text>\n";
    }

    void finish() {
        out_ << "</svg>\n";
        const std::string tmp = path_ + ".tmp";
        {
            std::ofstream f(tmp);
            if (!f) throw Error("svg: cannot open " + tmp);
            f << out_.str();
        }
        if (std::rename(tmp.c_str(), path_.c_str()) != 0)
            throw Error("svg: cannot move " + tmp + " into place");
    }

private:
    static constexpr double kWidth = 860.0;
    std::string path_;
    Box box_;
    double scale_ = 1.0;
    double height_ = 0.0;
    std::ostringstream out_;
};

void draw_layers(Canvas& c, const std::vector<SvgLayer>& layers) {
    double ly = 20.0;
    for (const auto& layer : layers) {
        for (cplx z : layer.points) c.dot(z, layer.radius, layer.color);
        if (!layer.label.empty()) {
            c.label(12.0, ly, layer.label, layer.color);
            ly += 18.0;
        }
    }
}

}  // namespace

void write_spectrum_svg(const std::string& path, const QRegion& region,
                        const IntervalUnion& sigma,
                        const std::vector<SvgLayer>& layers) {
    Box box{region.outer().center.real() - region.outer().radius,
            region.outer().center.real() + region.outer().radius,
            -region.outer().radius, region.outer().radius};
    for (const auto& layer : layers)
        for (cplx z : layer.points) box.grow(z);
    Canvas c(path, box);
    c.circle_outline(region.outer().center, region.outer().radius, "#333333", false);
    for (const Disk& g : region.gap_disks()) c.circle_outline(g.center, g.radius, "#999999", true);
    for (const Interval& band : sigma.intervals())
        c.line(cplx(band.lo, 0.0), cplx(band.hi, 0.0), "#c03020", 3.0);
    draw_layers(c, layers);
    c.finish();
}

void write_points_svg(const std::string& path, const std::vector<SvgLayer>& layers) {
    Box box{0.0, 0.0, 0.0, 0.0};
    bool seeded = false;
    for (const auto& layer : layers)
        for (cplx z : layer.points) {
            if (!seeded) {
                box = Box{z.real(), z.real(), z.imag(), z.imag()};
                seeded = true;
            } else {
                box.grow(z);
            }
        }
    if (!seeded) box = Box{-1.0, 1.0, -1.0, 1.0};
    if (box.x1 - box.x0 < 1e-9) { box.x0 -= 0.5; box.x1 += 0.5; }
    if (box.y1 - box.y0 < 1e-9) { box.y0 -= 0.5; box.y1 += 0.5; }
    Canvas c(path, box);
    draw_layers(c, layers);
    c.finish();
}

}  // namespace relspec
