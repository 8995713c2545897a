//! File formats for images and transforms.

mod image_file;
mod transform_file;

pub use image_file::{read_image, write_image, ImageFormat, RAW_IMAGE_MAGIC, RAW_IMAGE_VERSION};
pub use transform_file::{
    decode_transform, encode_transform, read_transform, write_transform, TransformFile,
    RAW_QUADRANT, TRANSFORM_HEADER_LEN, TRANSFORM_MAGIC, TRANSFORM_VERSION,
};
