import rclpy
from rclpy.node import Node
from sensor_msgs.msg import LaserScan


class SensorNode(Node):
    """Publishes range scans for whichever scope it is launched into."""

    def __init__(self):
        super().__init__('sensor')
        self.scan_pub = self.create_publisher(LaserScan, 'scan', 10)
        self.timer = self.create_timer(0.1, self.on_tick)

    def on_tick(self):
        self.scan_pub.publish(LaserScan())


def main(args=None):
    rclpy.init(args=args)
    node = SensorNode()
    rclpy.spin(node)
    node.destroy_node()
    rclpy.shutdown()
