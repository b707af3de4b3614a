//! Renders one simulator frame, runs the perception stages on it and prints
//! what each stage sees. Pass a directory to also save the frame as PGM.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use pct_agent::harness::RunConfig;
use pct_agent::perception::{classify, detect_blobs, preprocess, Perceiver};
use pct_agent::sim::{render, reset};
use pct_agent::Action;

fn main() -> anyhow::Result<()> {
    let cfg = RunConfig::sim_breakout();
    let mut state = reset(&cfg.sim)?;
    state.step(Action::Fire, &cfg.sim)?;
    for _ in 0..6 {
        state.step(Action::Noop, &cfg.sim)?;
    }
    let frame = render(&state, &cfg.sim);
    println!(
        "true ball ({:.2}, {:.2}), true paddle {:.2}",
        state.ball.x, state.ball.y, state.paddle
    );

    let binary = preprocess(&frame, &cfg.crop)?;
    println!(
        "crop {}x{} at ({}, {}), {} foreground pixels",
        binary.width(),
        binary.height(),
        cfg.crop.top_row,
        cfg.crop.left_col,
        binary.count_foreground()
    );

    let blobs = detect_blobs(&binary);
    println!("{} blobs; the five largest:", blobs.len());
    for b in blobs.iter().take(5) {
        println!(
            "  area {:4}  centroid ({:6.2}, {:6.2})  bbox {}x{}",
            b.area,
            b.centroid_x,
            b.centroid_y,
            b.bbox_width(),
            b.bbox_height()
        );
    }

    let (ball, paddle) = classify(&blobs, &cfg.layout);
    let crop_x = |x: f64| x + cfg.crop.left_col as f64;
    let crop_y = |y: f64| y + cfg.crop.top_row as f64;
    if let Some(b) = ball {
        println!(
            "ball blob at ({:.2}, {:.2}) in frame coordinates",
            crop_x(b.centroid_x),
            crop_y(b.centroid_y)
        );
    }
    if let Some(p) = paddle {
        println!("paddle blob centre {:.2}", crop_x(p.centroid_x));
    }

    let mut perceiver = Perceiver::new(cfg.crop.clone(), cfg.layout.clone())?;
    let p = perceiver.perceive(&frame)?;
    println!("percept: {p:?}");

    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        std::fs::create_dir_all(&dir)?;
        let path = dir.join("frame.pgm");
        frame.write_pgm(BufWriter::new(File::create(&path)?))?;
        binary
            .to_luminance()
            .write_pgm(BufWriter::new(File::create(dir.join("binary.pgm"))?))?;
        println!("wrote {} and binary.pgm", path.display());
    }
    Ok(())
}
