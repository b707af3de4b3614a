//! Encodes a frame and an action the way a bridge process sees them, then
//! shows how malformed input is rejected.

use pct_agent::perception::RawFrame;
use pct_agent::protocol::{decode_action, decode_frame, encode_action, encode_frame};
use pct_agent::Action;

fn main() -> anyhow::Result<()> {
    let mut frame = RawFrame::black(4, 2);
    frame.set(1, 2, 200);
    let bytes = encode_frame(&frame, false, Some(7.0))?;
    println!("frame message, {} bytes:", bytes.len());
    println!("  header  {:02x?}", &bytes[..8]);
    println!("  pixels  {:02x?}", &bytes[8..]);

    let msg = decode_frame(&bytes)?;
    println!(
        "decoded: {}x{}, terminal {}, reward {:?}",
        msg.width,
        msg.height,
        msg.terminal,
        msg.reward()
    );

    for a in Action::ALL {
        println!("action {a:>5} -> byte {}", encode_action(a));
    }
    assert_eq!(decode_action(3)?, Action::Left);

    let mut bad = bytes.clone();
    bad[0] = b'Q';
    println!("bad magic: {}", decode_frame(&bad).unwrap_err());
    println!(
        "truncated: {}",
        decode_frame(&bytes[..bytes.len() - 1]).unwrap_err()
    );
    println!("action 9:  {}", decode_action(9).unwrap_err());
    Ok(())
}
