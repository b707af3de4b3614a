use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ensure, ConfigError};

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("pixel buffer holds {actual} bytes but {width}x{height} needs {expected}")]
    BufferSize {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },
    #[error(
        "crop window {crop_height}x{crop_width} at ({top_row}, {left_col}) does not fit a {height}x{width} frame"
    )]
    CropOutside {
        top_row: usize,
        left_col: usize,
        crop_height: usize,
        crop_width: usize,
        height: usize,
        width: usize,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Row-major 8-bit luminance frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFrame {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl RawFrame {
    pub const ATARI_HEIGHT: usize = 210;
    pub const ATARI_WIDTH: usize = 160;

    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, FrameError> {
        let expected = width * height;
        if pixels.len() != expected {
            return Err(FrameError::BufferSize {
                width,
                height,
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn black(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            pixels: vec![0; width * height],
        }
    }

    /// Reduces interleaved RGB to luminance by taking the brightest channel,
    /// so any colored object on black stays bright.
    pub fn from_rgb(width: usize, height: usize, rgb: &[u8]) -> Result<Self, FrameError> {
        let expected = width * height * 3;
        if rgb.len() != expected {
            return Err(FrameError::BufferSize {
                width,
                height,
                expected,
                actual: rgb.len(),
            });
        }
        let pixels = rgb
            .chunks_exact(3)
            .map(|p| p[0].max(p[1]).max(p[2]))
            .collect();
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    /// Fills the intersection of the rectangle with the frame.
    pub fn fill_rect(&mut self, top: i64, left: i64, height: i64, width: i64, value: u8) {
        let r0 = top.max(0) as usize;
        let c0 = left.max(0) as usize;
        let r1 = (top + height).clamp(0, self.height as i64) as usize;
        let c1 = (left + width).clamp(0, self.width as i64) as usize;
        for r in r0..r1 {
            self.pixels[r * self.width + c0.min(c1)..r * self.width + c1].fill(value);
        }
    }

    /// Writes the frame as a binary portable graymap (`P5`, maxval 255).
    pub fn write_pgm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)
    }
}

/// Crop window and binarization threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CropConfig {
    pub top_row: usize,
    pub left_col: usize,
    pub crop_height: usize,
    pub crop_width: usize,
    /// Pixels strictly brighter than this are foreground.
    pub threshold: u8,
}

impl Default for CropConfig {
    fn default() -> Self {
        Self {
            top_row: 96,
            left_col: 14,
            crop_height: 100,
            crop_width: 132,
            threshold: 40,
        }
    }
}

impl CropConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        ensure(self.crop_height > 0, "crop.crop_height", "must be positive")?;
        ensure(self.crop_width > 0, "crop.crop_width", "must be positive")?;
        Ok(())
    }

    pub fn check_fits(&self, frame: &RawFrame) -> Result<(), FrameError> {
        self.validate()?;
        if self.top_row + self.crop_height > frame.height
            || self.left_col + self.crop_width > frame.width
        {
            return Err(FrameError::CropOutside {
                top_row: self.top_row,
                left_col: self.left_col,
                crop_height: self.crop_height,
                crop_width: self.crop_width,
                height: frame.height,
                width: frame.width,
            });
        }
        Ok(())
    }
}

/// Boolean grid, `true` for foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFrame {
    height: usize,
    width: usize,
    cells: Vec<bool>,
}

impl BinaryFrame {
    pub fn new(height: usize, width: usize) -> Self {
        Self {
            height,
            width,
            cells: vec![false; height * width],
        }
    }

    pub fn from_cells(height: usize, width: usize, cells: Vec<bool>) -> Self {
        assert_eq!(
            cells.len(),
            height * width,
            "cell count must match dimensions"
        );
        Self {
            height,
            width,
            cells,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.cells[row * self.width + col] = value;
    }

    pub fn count_foreground(&self) -> usize {
        self.cells.iter().filter(|c| **c).count()
    }

    /// Re-embeds the grid as a 0/255 luminance frame.
    pub fn to_luminance(&self) -> RawFrame {
        let pixels = self
            .cells
            .iter()
            .map(|&c| if c { 255 } else { 0 })
            .collect();
        RawFrame {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}

/// Crops `frame` to the configured window and thresholds it.
pub fn preprocess(frame: &RawFrame, cfg: &CropConfig) -> Result<BinaryFrame, FrameError> {
    cfg.check_fits(frame)?;
    let mut cells = Vec::with_capacity(cfg.crop_height * cfg.crop_width);
    for r in cfg.top_row..cfg.top_row + cfg.crop_height {
        let start = r * frame.width + cfg.left_col;
        let row = &frame.pixels[start..start + cfg.crop_width];
        cells.extend(row.iter().map(|&p| p > cfg.threshold));
    }
    Ok(BinaryFrame {
        height: cfg.crop_height,
        width: cfg.crop_width,
        cells,
    })
}
