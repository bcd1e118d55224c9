import rclpy
from rclpy.node import Node
from geometry_msgs.msg import PoseArray, PoseStamped


class PlaceRouterNode(Node):
    """Routes picked parcels to their destination bin based on size class."""

    BIN_SMALL = 'bin_small'
    BIN_LARGE = 'bin_large'

    def __init__(self):
        super().__init__('place_router')
        self.poses_sub = self.create_subscription(
            PoseArray, 'parcel_poses', self.on_poses, 10)
        self.target_pub = self.create_publisher(PoseStamped, 'place_target', 10)

    def on_poses(self, msg):
        if not msg.poses:
            return
        target = PoseStamped()
        target.header = msg.header
        target.header.frame_id = self.route(msg.poses[0])
        target.pose = msg.poses[0]
        self.target_pub.publish(target)

    def route(self, pose):
        return self.BIN_SMALL if pose.position.z < 0.12 else self.BIN_LARGE


def main(args=None):
    rclpy.init(args=args)
    node = PlaceRouterNode()
    rclpy.spin(node)
    node.destroy_node()
    rclpy.shutdown()
