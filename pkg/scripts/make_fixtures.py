"""Write the bundled example inputs to a data directory for use with the CLI."""
import argparse
from pathlib import Path

from mapperforge import serialize as ser
from mapperforge.fixtures import circle_points, eight_points, height_cover, height_lens, seven_vertex_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "circle.csv": ser.points_to_csv(circle_points()),
        "height_lens.json": ser.dumps(ser.lens_to_json(height_lens())),
        "height_cover.json": ser.dumps(ser.cover_to_json(height_cover())),
        "graph7.json": ser.dumps(ser.complex_to_json(seven_vertex_graph())),
        "points8.csv": ser.points_to_csv(eight_points()),
    }
    for name, text in files.items():
        (out / name).write_text(text)
        print(out / name)


if __name__ == "__main__":
    main()
