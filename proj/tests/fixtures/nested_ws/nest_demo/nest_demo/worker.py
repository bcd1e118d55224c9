import rclpy
from rclpy.node import Node
from sensor_msgs.msg import LaserScan
from std_msgs.msg import String


class WorkerNode(Node):
    """Consumes scans inside its namespace and reports a status line."""

    def __init__(self):
        super().__init__('worker')
        self.scan_sub = self.create_subscription(LaserScan, 'scan', self.on_scan, 10)
        self.status_pub = self.create_publisher(String, 'status', 10)

    def on_scan(self, msg):
        status = String()
        status.data = 'ranges=%d' % len(msg.ranges)
        self.status_pub.publish(status)


def main(args=None):
    rclpy.init(args=args)
    node = WorkerNode()
    rclpy.spin(node)
    node.destroy_node()
    rclpy.shutdown()
